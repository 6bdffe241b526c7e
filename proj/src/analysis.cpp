#include "qweb/analysis.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "qweb/context.hpp"
#include "qweb/fock.hpp"
#include "qweb/interference.hpp"
#include "qweb/serialize.hpp"

namespace qweb {

using nlohmann::json;

namespace {

json guarded(const std::function<json()>& make) {
    try {
        return make();
    } catch (const std::exception& e) {
        return json{{"error", e.what()}};
    }
}

// Exact value of the superposed characteristic states against the manifest
// projector, evaluated on concrete index sets with the fitted phases. This is
// the non-orthogonal route; it differs from the closed form whenever the two
// supports overlap.
json exact_superposition_entry(const InterferenceSetup& layout, const PhaseFit& fit) {
    if (!fit.feasible || !fit.theta) return json{{"note", "no fitted phases"}};
    auto assign = fitted_phase_assignment(layout.support_A, layout.support_B, layout.support_X,
                                          *fit.theta);
    InterferenceSetup setup = layout;
    setup.phases_A = assign.phases_A;
    setup.phases_B = assign.phases_B;
    const auto a = chi_A(setup);
    const auto b = chi_B(setup);
    const IndexProjector m_x(setup.support_X, setup.n);
    const double overlap = inner_product(a, b).real();
    const double value = mu_nonorthogonal(a, b, m_x);
    return json{{"mu", value}, {"state_overlap_re", overlap}};
}

json analyze(const CooccurrenceStats& stats, std::optional<double> target_override,
             std::optional<InterferenceSetup> layout) {
    json report;
    report["stats"] = stats_to_json(stats);

    std::optional<double> target = target_override;
    report["frequencies"] = guarded([&] {
        const auto freq = relative_frequencies(stats);
        if (!target) target = freq.mu_AB_target;
        return json{{"mu_A", freq.mu_A}, {"mu_B", freq.mu_B}, {"mu_AB_target", freq.mu_AB_target}};
    });
    if (!target && stats.n_AB > 0)
        target = static_cast<double>(stats.n_ABX) / static_cast<double>(stats.n_AB);
    report["target"] = target ? json(*target) : json{{"error", "undefined target: n_AB = 0"}};

    report["uniform_average"] = guarded([&] {
        if (stats.n_A <= 0) throw std::domain_error("undefined frequency: n_A = 0");
        if (stats.n_B <= 0) throw std::domain_error("undefined frequency: n_B = 0");
        return json(0.5 * (static_cast<double>(stats.n_AX) / static_cast<double>(stats.n_A) +
                           static_cast<double>(stats.n_BX) / static_cast<double>(stats.n_B)));
    });

    report["interference_interval"] = guarded([&] {
        const auto interval = interference_interval(stats);
        return json::array({interval.lo, interval.hi});
    });

    report["interference_half_width"] = guarded([&] {
        const auto interval = interference_interval(stats);
        return json(0.5 * (interval.raw_hi - interval.raw_lo));
    });

    report["phase_fit"] = guarded([&] {
        if (!target) throw std::domain_error("undefined target: n_AB = 0");
        return phase_fit_to_json(fit_phases(stats, *target));
    });

    report["superposition_exact"] = guarded([&] {
        if (!target) throw std::domain_error("undefined target: n_AB = 0");
        const auto fit = fit_phases(stats, *target);
        if (layout) return exact_superposition_entry(*layout, fit);
        if (auto synthesized = synthesize_supports(stats))
            return exact_superposition_entry(*synthesized, fit);
        return json{{"note", "counts admit no index-set realization"}};
    });

    report["fock"] = guarded([&] {
        if (!target) throw std::domain_error("undefined target: n_AB = 0");
        return json{
            {"and", fock_report_to_json(fock_report(stats, LogicalMode::conjunction, *target))},
            {"or", fock_report_to_json(fock_report(stats, LogicalMode::disjunction, *target))}};
    });

    report["context_fit"] = guarded([&] {
        if (!target) throw std::domain_error("undefined target: n_AB = 0");
        const auto freq = relative_frequencies(stats);
        return context_fit_to_json(solve_context(freq.mu_A, freq.mu_B, *target));
    });

    return report;
}

}  // namespace

json analyze_stats(const CooccurrenceStats& stats, std::optional<double> target_override) {
    stats.validate();
    return analyze(stats, target_override, std::nullopt);
}

json analyze_corpus(const Corpus& corpus, const std::string& A, const std::string& B,
                    const std::string& X, std::optional<double> target_override) {
    const auto stats = counts(corpus, A, B, X);
    std::optional<InterferenceSetup> layout;
    const auto j_a = corpus.doc_set({A});
    const auto j_b = corpus.doc_set({B});
    if (!j_a.empty() && !j_b.empty()) {
        InterferenceSetup setup;
        setup.n = corpus.size();
        setup.support_A = j_a;
        setup.support_B = j_b;
        setup.support_X = corpus.doc_set({X});
        layout = std::move(setup);
    }
    json report = analyze(stats, target_override, layout);
    report["terms"] = json{{"A", A}, {"B", B}, {"X", X}};
    return report;
}

}  // namespace qweb
