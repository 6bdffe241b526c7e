#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qweb {

/// One document: a dense id and the set of distinct normalized terms it contains.
struct Document {
    int id = 0;
    std::set<std::string> tokens;
};

/// Immutable document collection with an inverted index.
///
/// Ids are dense in [0, n). Postings lists are sorted ascending and
/// duplicate-free; postings[t] holds exactly the ids of documents whose
/// token set contains t.
class Corpus {
public:
    static Corpus from_token_sets(std::vector<std::set<std::string>> docs);

    int size() const { return static_cast<int>(docs_.size()); }
    const std::vector<Document>& documents() const { return docs_; }
    const std::map<std::string, std::vector<int>>& postings() const { return postings_; }
    std::size_t vocabulary_size() const { return postings_.size(); }

    /// Ids of documents containing every term in `terms` (conjunctive).
    /// Unknown terms are legal and yield an empty result. Throws on an
    /// empty term list.
    std::vector<int> doc_set(const std::vector<std::string>& terms) const;

private:
    std::vector<Document> docs_;
    std::map<std::string, std::vector<int>> postings_;
};

/// Lowercase a text and split it into tokens on non-alphanumeric runs.
/// ASCII alphanumerics are token characters (letters lowercased); any
/// non-ASCII codepoint is treated as a token character and copied through
/// verbatim, so UTF-8 words survive intact. Never emits empty tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Distinct tokens of a text (per-document presence is all that counts).
std::set<std::string> token_set(std::string_view text);

/// True iff `bytes` is well-formed UTF-8.
bool is_valid_utf8(std::string_view bytes);

/// Build a Corpus from every .txt file in a directory. Document ids follow
/// lexicographic file-name order. Files are read and tokenized in parallel;
/// the merge is deterministic. Throws on an unreadable or non-UTF-8 file
/// (naming it) and on an empty corpus.
Corpus ingest_directory(const std::filesystem::path& dir);

/// Occurrence / co-occurrence counts for a term triple (A, B, X).
struct CooccurrenceStats {
    std::int64_t n = 0;      // documents in the collection
    std::int64_t n_A = 0;    // containing A
    std::int64_t n_B = 0;    // containing B
    std::int64_t n_AB = 0;   // containing A and B
    std::int64_t n_AX = 0;   // containing A and X
    std::int64_t n_BX = 0;   // containing B and X
    std::int64_t n_ABX = 0;  // containing A, B and X

    std::int64_t n_A_not_X() const { return n_A - n_AX; }
    std::int64_t n_B_not_X() const { return n_B - n_BX; }

    /// Throws std::invalid_argument when the counts are mutually inconsistent.
    void validate() const;
};

CooccurrenceStats counts(const Corpus& corpus, const std::string& A, const std::string& B,
                         const std::string& X);

struct RelativeFrequencies {
    double mu_A = 0.0;          // n_AX / n_A
    double mu_B = 0.0;          // n_BX / n_B
    double mu_AB_target = 0.0;  // n_ABX / n_AB
};

/// Throws std::domain_error naming the zero denominator.
RelativeFrequencies relative_frequencies(const CooccurrenceStats& stats);

}  // namespace qweb
