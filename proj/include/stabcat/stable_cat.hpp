#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "stabcat/module_cat.hpp"

namespace stabcat {

/// Verdict with re-verifiable witnesses. A "factors through" certificate is a
/// pair (h, g) with g*h equal to the tested morphism, entry for entry.
struct StableVerdict {
    bool answer = false;
    std::string route;
    std::vector<std::pair<std::string, Morphism>> morphisms;
    std::vector<std::pair<std::string, Representation>> objects;

    const Morphism* find_morphism(const std::string& name) const;
    const Representation* find_object(const std::string& name) const;
};

/// The stable category A/<T> for T = add of a finite generator list.
/// Hom spaces and ideal subspaces are memoized; reads may run concurrently,
/// inserts are serialized behind a mutex.
class StableContext {
  public:
    StableContext(std::shared_ptr<const PathAlgebra> algebra, std::vector<Representation> t_generators);

    const std::shared_ptr<const PathAlgebra>& algebra() const { return algebra_; }
    const std::vector<Representation>& generators() const { return generators_; }

    bool generators_projective() const { return generators_projective_; }
    const std::vector<bool>& generator_projective_flags() const { return generator_projective_; }
    void require_projective_generators(const std::string& op) const;

    const HomBasis& hom(const Representation& x, const Representation& y) const;
    const Subspace& ideal(const Representation& x, const Representation& y) const;

    StableContext opposite() const;

  private:
    std::shared_ptr<const PathAlgebra> algebra_;
    std::vector<Representation> generators_;
    std::vector<bool> generator_projective_;
    bool generators_projective_ = true;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<std::string, std::string>, HomBasis> hom_cache_;
    mutable std::map<std::pair<std::string, std::string>, Subspace> ideal_cache_;
};

/// Span of all composites x -> T_i -> y, as a subspace of the Hom coordinate
/// space; exactly the morphisms factoring through add(T).
Subspace ideal_basis(const StableContext& ctx, const Representation& x, const Representation& y);

std::size_t stable_hom_dim(const StableContext& ctx, const Representation& x, const Representation& y);

enum class ApproxSide { Precover, Preenvelope };

/// Canonical approximation: the precover assembles one generator copy per
/// Hom-basis element columnwise; the preenvelope is the dual assembly.
Morphism approximation(const StableContext& ctx, const Representation& m, ApproxSide side);

enum class LoopSide { Loop, Suspension };

/// Loop = kernel of the precover; suspension = cokernel of the preenvelope.
Representation loop_suspension(const StableContext& ctx, const Representation& m, LoopSide side);

StableVerdict is_stable_zero(const StableContext& ctx, const Morphism& f);
StableVerdict is_in_add(const StableContext& ctx, const Representation& m);
StableVerdict is_stable_mono(const StableContext& ctx, const Morphism& f);
StableVerdict is_stable_epi(const StableContext& ctx, const Morphism& f);
StableVerdict is_stable_strong_mono(const StableContext& ctx, const Morphism& f);
StableVerdict is_stable_strong_epi(const StableContext& ctx, const Morphism& f);
StableVerdict is_stable_iso(const StableContext& ctx, const Morphism& f);

/// For a stable epi f, an epimorphism [f, g] representing the same stable map.
Morphism epi_representative(const StableContext& ctx, const Morphism& f);
/// For a stable strong mono f, the representative [f, p_Y] with kernel in add(T).
Morphism strong_mono_representative(const StableContext& ctx, const Morphism& f);

/// True when the verdict's (h, g) pair recomposes to f exactly.
bool verify_factor_certificate(const Morphism& f, const StableVerdict& v);
/// True when a positive in-add verdict's section splits its precover.
bool verify_in_add_certificate(const StableVerdict& v);

}  // namespace stabcat
