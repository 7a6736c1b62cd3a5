#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabcat/stable_cat.hpp"

namespace stabcat {

// ---- Serre classes (vertex-support subcategories) -------------------------

/// Full subcategory of all modules whose dimensions vanish off the support.
struct SerreClass {
    std::vector<int> support;  // vertex indices, sorted unique

    bool contains_vertex(int v) const;
};

SerreClass serre_class(const std::shared_ptr<const PathAlgebra>& algebra, const std::vector<std::string>& vertex_names);
bool serre_contains(const SerreClass& s, const Representation& x);

struct SerreTorsionResult {
    Representation torsion;       // t(x)
    Morphism inclusion;           // t(x) -> x, the canonical cover
    Representation torsion_free;  // x / t(x)
    Morphism projection;          // x -> x/t(x)
};

/// Largest submodule supported on s, by fixed-point shrinking; the quotient
/// has zero torsion part.
SerreTorsionResult serre_torsion(const Representation& x, const SerreClass& s);

/// A morphism factors through a supported module iff it vanishes off the
/// support, so the ideal is decided structurally.
bool serre_stable_zero(const SerreClass& s, const Morphism& f);
Subspace serre_ideal(const SerreClass& s, const Representation& x, const Representation& y);

bool serre_stable_mono(const Morphism& f, const SerreClass& s);
bool serre_stable_epi(const Morphism& f, const SerreClass& s);
bool serre_stable_iso(const Morphism& f, const SerreClass& s);

struct SerrePropResult {
    bool mono_lhs = false;  // stable mono, decided against the torsion cover
    bool mono_rhs = false;  // kernel supported
    bool epi_lhs = false;
    bool epi_rhs = false;   // cokernel supported
};

SerrePropResult check_serre_prop(const Morphism& f, const SerreClass& s);

// ---- balance reports -------------------------------------------------------

enum class BalanceVerdict { Balanced, NotBalanced, Undetermined };

struct BalanceWitness {
    Morphism f;
    std::string description;
    bool is_mono = false;
    bool is_epi = false;
    bool is_strong_mono = false;
    bool is_strong_epi = false;
    bool is_iso = false;
};

struct BalanceReport {
    BalanceVerdict verdict = BalanceVerdict::Undetermined;
    std::string route;
    std::optional<BalanceWitness> witness;
    std::vector<std::string> log;
    std::size_t candidates_tried = 0;
    std::uint64_t seed = 0;
};

/// Split canonical sequences plus vanishing Hom(x/t(x), t(x)) on every test
/// module gives balanced evidence; otherwise a non-iso canonical projection is
/// returned as a certified witness.
BalanceReport check_serre_balance(const SerreClass& s, const std::vector<Representation>& test_modules);

// ---- weak balance for projective T ----------------------------------------

struct WeakBalanceGenerator {
    std::size_t index = 0;
    bool envelope_projective = false;
    bool nonzero_restriction = false;  // some g: E(T_i) -> T_j with g*eps nonzero
};

struct WeakBalanceReport {
    bool all_pass = false;
    std::vector<WeakBalanceGenerator> generators;
};

/// For each nonzero generator: embeds it into its injective envelope and asks
/// whether some map back into a generator survives restriction. All-pass is a
/// sufficient condition for weak balance.
WeakBalanceReport check_weak_balance_sufficient(const StableContext& ctx);

/// For a mono j with source in add(T): is there h: X -> T_i with h*j nonzero?
bool generator_embedding_detected(const StableContext& ctx, const Morphism& j);

struct MonoBalanceCertificate {
    std::optional<Morphism> witness_h;  // no map into im(h*mu) coincides with h on the source
    bool exhausted = false;
    std::size_t candidates_tried = 0;
};

/// Semi-decision over candidate functionals h: X -> T_i: returns an h whose
/// restriction cannot be realized through im(h*mu), or reports exhaustion.
/// Only applies to non-split monos out of add(T).
MonoBalanceCertificate balance_certificate_for_mono(const StableContext& ctx, const Morphism& mu, std::size_t budget);

// ---- hereditary specialization ---------------------------------------------

struct HereditaryReport {
    bool hypothesis_ok = false;  // every enumerated subobject of a generator is projective
    bool perp_closed = false;    // ^perp T closed under enumerated subobjects
    std::vector<std::string> log;
    std::optional<BalanceVerdict> conclusion;  // only set when the hypothesis audit passes
};

HereditaryReport check_hereditary(const StableContext& ctx, const std::vector<Representation>& test_modules,
                                  std::size_t budget = 6);

// ---- counterexample search --------------------------------------------------

enum class SearchMode { Balance, WeakBalance };
enum class SearchExecution { Auto, Serial, Parallel };

/// Seed-deterministic search for a certified mono+epi (or strong mono + strong
/// epi) non-isomorphism over the corpus. Candidates are canonical projections
/// along add(T) submodules, extension epis, then Hom-space elements. Parallel
/// evaluation reduces by candidate index, so the reported witness does not
/// depend on the thread count. Never answers Balanced.
BalanceReport search_counterexample(const StableContext& ctx, const std::vector<Representation>& test_modules,
                                    SearchMode mode, std::size_t budget, std::uint64_t seed,
                                    SearchExecution exec = SearchExecution::Auto);

/// Candidate list shared by the serial and parallel evaluators (exposed for
/// the benchmark).
struct SearchCandidate {
    Morphism f;
    std::string description;
};
std::vector<SearchCandidate> search_candidates(const StableContext& ctx, const std::vector<Representation>& test_modules,
                                               std::size_t budget, std::uint64_t seed);

}  // namespace stabcat
