#pragma once

#include <optional>
#include <vector>

#include "stabcat/representation.hpp"

namespace stabcat {

// ---- affine systems over morphism unknowns ------------------------------

struct MorphismVar {
    std::size_t offset = 0;
    Representation source, target;
};

MorphismVar add_morphism_unknown(AffineSystem& sys, const Representation& source, const Representation& target);
void add_intertwining_rows(AffineSystem& sys, const MorphismVar& var);
/// left * var = rhs
void add_left_compose_rows(AffineSystem& sys, const Morphism& left, const MorphismVar& var, const Morphism& rhs);
/// var * right = rhs
void add_right_compose_rows(AffineSystem& sys, const MorphismVar& var, const Morphism& right, const Morphism& rhs);
/// left * var * right = rhs
void add_sandwich_rows(AffineSystem& sys, const Morphism& left, const MorphismVar& var, const Morphism& right,
                       const Morphism& rhs);
Morphism extract_morphism(const MorphismVar& var, const std::vector<Fel>& solution);

// ---- Hom spaces ----------------------------------------------------------

/// Basis of the space of morphisms m -> n, canonical under the RREF of the
/// intertwining kernel.
struct HomBasis {
    Representation source, target;
    std::vector<Morphism> basis;
    std::size_t dim() const { return basis.size(); }
};

HomBasis hom_basis(const Representation& m, const Representation& n);

// ---- kernels, images, cokernels ------------------------------------------

struct SubmoduleResult {
    Representation sub;
    Morphism inclusion;
};
struct QuotientResult {
    Representation quotient;
    Morphism projection;
};

/// Builds the subrepresentation carried by arrow-stable graded subspaces.
SubmoduleResult submodule_from_subspaces(const Representation& m, const std::vector<Subspace>& spaces);
QuotientResult quotient_by_subspaces(const Representation& m, const std::vector<Subspace>& spaces);
/// Smallest submodule containing the given graded generators.
SubmoduleResult generated_submodule(const Representation& m, const std::vector<std::vector<std::vector<Fel>>>& generators);
std::vector<Subspace> image_subspaces(const Morphism& f);

struct Factorization {
    Morphism kernel_mono;   // K -> X
    Morphism image_epi;     // X -> im(f)
    Morphism image_mono;    // im(f) -> Y
    Morphism cokernel_epi;  // Y -> cok(f)
};

/// Vertexwise kernel/image/cokernel with induced arrow maps;
/// f = image_mono * image_epi.
Factorization factorize(const Morphism& f);

struct PullbackResult {
    Representation corner;  // kernel of [f, -g] inside X (+) W
    Morphism to_x;
    Morphism to_w;
};
PullbackResult pullback(const Morphism& f, const Morphism& g);

struct PushoutResult {
    Representation corner;  // cokernel of [f; -g] out of X (+) W
    Morphism from_x;
    Morphism from_w;
};
PushoutResult pushout(const Morphism& f, const Morphism& g);

// ---- structure -----------------------------------------------------------

struct RadicalSocleTop {
    Representation radical;
    Morphism radical_inclusion;
    Representation socle;
    Morphism socle_inclusion;
    Representation top;
    Morphism top_projection;
};

RadicalSocleTop radical_socle_top(const Representation& m);

enum class EnvelopeSide { Injective, Projective };

struct EnvelopeResult {
    Representation hull;   // E or P
    Morphism structural;   // mono m -> E, or epi P -> m
};

/// Injective envelope assembled from the socle, or projective cover from the
/// top; the structural map is found by an affine solve and checked to be
/// injective (resp. surjective) vertexwise.
EnvelopeResult envelope(const Representation& m, EnvelopeSide side);

struct SplitnessResult {
    bool is_split_mono = false;
    bool is_split_epi = false;
    std::optional<Morphism> retraction;  // r with r*f = id_source
    std::optional<Morphism> section;     // s with f*s = id_target
};

SplitnessResult splitness(const Morphism& f);

/// All arrow-stable graded subspaces, as validated inclusions. Gated by a
/// total-dimension budget; enumeration over p > 2 needs force unless every
/// vertex space is at most a line.
std::vector<SubmoduleResult> enumerate_submodules(const Representation& m, std::size_t budget = 6, bool force = false);

// ---- extensions ----------------------------------------------------------

struct ShortExactSequence {
    Morphism mono;  // t -> X
    Morphism epi;   // X -> y
    void validate(const std::string& name = "short exact sequence") const;
};

struct Ext1Result {
    std::size_t dimension = 0;
    std::vector<Morphism> cocycles;  // K -> t, coset representatives
    Representation cover;            // P(y)
    Morphism cover_epi;              // P(y) -> y
    Morphism kernel_mono;            // K -> P(y)
};

/// Ext^1(y, t) through the projective cover presentation of y.
Ext1Result ext1(const Representation& y, const Representation& t);

/// Pushout of the cover kernel along a cocycle; splits iff the cocycle class
/// vanishes.
ShortExactSequence extension_from_cocycle(const Representation& y, const Representation& t, const Morphism& cocycle);

// ---- isomorphism testing --------------------------------------------------

/// Equal dimension vectors plus an invertible element of Hom(a, b). The
/// invertible combination is searched exhaustively over F_2 and on a
/// deterministic grid otherwise (exact for p > total dimension).
bool is_isomorphic(const Representation& a, const Representation& b);
std::optional<Morphism> find_isomorphism(const Representation& a, const Representation& b);

}  // namespace stabcat
