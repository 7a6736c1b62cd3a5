#include <atomic>
#include <random>

#include "stabcat/balance.hpp"
#include "stabcat/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stabcat {

namespace {

bool candidate_hits(const StableContext& ctx, SearchMode mode, const Morphism& f) {
    if (mode == SearchMode::Balance) {
        if (!is_stable_mono(ctx, f).answer) return false;
        if (!is_stable_epi(ctx, f).answer) return false;
    } else {
        if (!is_stable_strong_mono(ctx, f).answer) return false;
        if (!is_stable_strong_epi(ctx, f).answer) return false;
    }
    return !is_stable_iso(ctx, f).answer;
}

BalanceWitness certify(const StableContext& ctx, const SearchCandidate& c) {
    BalanceWitness w;
    w.f = c.f;
    w.description = c.description;
    w.is_mono = is_stable_mono(ctx, c.f).answer;
    w.is_epi = is_stable_epi(ctx, c.f).answer;
    w.is_strong_mono = is_stable_strong_mono(ctx, c.f).answer;
    w.is_strong_epi = is_stable_strong_epi(ctx, c.f).answer;
    w.is_iso = is_stable_iso(ctx, c.f).answer;
    return w;
}

}  // namespace

std::vector<SearchCandidate> search_candidates(const StableContext& ctx, const std::vector<Representation>& test_modules,
                                               std::size_t budget, std::uint64_t seed) {
    std::vector<SearchCandidate> out;
    const FieldSpec f = ctx.algebra()->field();
    auto room = [&] { return out.size() < budget; };

    // (1) canonical projections along add(T) submodules
    for (std::size_t i = 0; i < test_modules.size() && room(); ++i) {
        const Representation& x = test_modules[i];
        std::size_t max_dim = 0;
        for (std::size_t d : x.dims()) max_dim = std::max(max_dim, d);
        if (x.total_dim() > 8 || (f.p() != 2 && max_dim > 1)) continue;
        std::vector<SubmoduleResult> subs;
        try {
            subs = enumerate_submodules(x, 8, /*force=*/f.p() == 2 || max_dim <= 1);
        } catch (const BudgetExceededError&) {
            continue;
        }
        for (const SubmoduleResult& sub : subs) {
            if (!room()) break;
            if (sub.sub.total_dim() == 0) continue;
            if (!is_in_add(ctx, sub.sub).answer) continue;
            QuotientResult quo = quotient_by_subspaces(x, image_subspaces(sub.inclusion));
            out.push_back({quo.projection, "projection of module " + std::to_string(i) + " along an add(T) submodule"});
        }
    }

    // (2) extension epis with generator kernels
    for (std::size_t i = 0; i < test_modules.size() && room(); ++i) {
        for (std::size_t gi = 0; gi < ctx.generators().size() && room(); ++gi) {
            const Representation& t = ctx.generators()[gi];
            if (t.is_zero()) continue;
            Ext1Result ext = ext1(test_modules[i], t);
            for (const Morphism& c : ext.cocycles) {
                if (!room()) break;
                ShortExactSequence ses = extension_from_cocycle(test_modules[i], t, c);
                out.push_back({ses.epi, "extension epi onto module " + std::to_string(i) + " with kernel generator " +
                                            std::to_string(gi)});
            }
        }
    }

    // (3) hom-basis elements and seeded coefficient combinations
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < test_modules.size() && room(); ++i)
        for (std::size_t j = 0; j < test_modules.size() && room(); ++j) {
            const HomBasis& hom = ctx.hom(test_modules[i], test_modules[j]);
            for (const Morphism& b : hom.basis) {
                if (!room()) break;
                out.push_back({b, "hom basis element " + std::to_string(i) + " -> " + std::to_string(j)});
            }
            if (hom.dim() >= 2) {
                for (int tries = 0; tries < 4 && room(); ++tries) {
                    Morphism combo = Morphism::zero(test_modules[i], test_modules[j]);
                    for (const Morphism& b : hom.basis) {
                        Fel c = static_cast<Fel>(rng() % f.p());
                        if (c != 0) combo = combo + b.scaled(c);
                    }
                    if (combo.is_zero()) continue;
                    out.push_back({combo, "random hom combination " + std::to_string(i) + " -> " + std::to_string(j)});
                }
            }
        }
    return out;
}

BalanceReport search_counterexample(const StableContext& ctx, const std::vector<Representation>& test_modules,
                                    SearchMode mode, std::size_t budget, std::uint64_t seed, SearchExecution exec) {
    BalanceReport report;
    report.seed = seed;
    std::vector<SearchCandidate> candidates = search_candidates(ctx, test_modules, budget, seed);
    report.candidates_tried = candidates.size();

    std::size_t hit = candidates.size();

#ifdef _OPENMP
    bool parallel = exec != SearchExecution::Serial;
#else
    bool parallel = false;
    (void)exec;
#endif

    if (parallel) {
#ifdef _OPENMP
        std::atomic<std::size_t> best(candidates.size());
        // independent candidates; the winner is the smallest hit index, so the
        // outcome does not depend on scheduling
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(candidates.size()); ++idx) {
            std::size_t i = static_cast<std::size_t>(idx);
            if (i >= best.load(std::memory_order_relaxed)) continue;
            if (!candidate_hits(ctx, mode, candidates[i].f)) continue;
            std::size_t prev = best.load(std::memory_order_relaxed);
            while (i < prev && !best.compare_exchange_weak(prev, i)) {
            }
        }
        hit = best.load();
#endif
    } else {
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (candidate_hits(ctx, mode, candidates[i].f)) {
                hit = i;
                break;
            }
    }

    if (hit < candidates.size()) {
        report.verdict = BalanceVerdict::NotBalanced;
        report.route = mode == SearchMode::Balance ? "mono-epi-non-iso-witness" : "strong-mono-epi-non-iso-witness";
        report.witness = certify(ctx, candidates[hit]);
        report.candidates_tried = hit + 1;
        return report;
    }
    report.verdict = BalanceVerdict::Undetermined;
    report.route = "witness-search-exhausted";
    report.log.push_back("no counterexample among " + std::to_string(candidates.size()) + " candidates");
    return report;
}

}  // namespace stabcat
