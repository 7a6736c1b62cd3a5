#include "stabcat/stable_cat.hpp"

#include <algorithm>

#include "stabcat/errors.hpp"

namespace stabcat {

namespace {

std::string rep_key(const Representation& m) {
    std::string key;
    key.reserve(64);
    auto push = [&key](std::size_t v) {
        for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    for (std::size_t d : m.dims()) push(d);
    key.push_back('|');
    for (const Matrix& mat : m.maps()) {
        push(mat.rows());
        push(mat.cols());
        for (Fel e : mat.entries()) push(e);
    }
    return key;
}

void check_same_algebra(const StableContext& ctx, const Representation& m, const char* op) {
    if (m.algebra() != ctx.algebra()) throw AlgebraMismatchError(std::string(op) + ": module over a different algebra");
}

}  // namespace

const Morphism* StableVerdict::find_morphism(const std::string& name) const {
    for (const auto& [n, m] : morphisms)
        if (n == name) return &m;
    return nullptr;
}

const Representation* StableVerdict::find_object(const std::string& name) const {
    for (const auto& [n, m] : objects)
        if (n == name) return &m;
    return nullptr;
}

StableContext::StableContext(std::shared_ptr<const PathAlgebra> algebra, std::vector<Representation> t_generators)
    : algebra_(std::move(algebra)), generators_(std::move(t_generators)) {
    if (generators_.empty()) throw ValidationError("StableContext: empty generator list");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].algebra() != algebra_)
            throw AlgebraMismatchError("StableContext: generator " + std::to_string(i) + " over a different algebra");
        generators_[i].validate("T generator " + std::to_string(i));
    }
    // eager projectivity audit: a module is projective iff its cover splits
    for (const Representation& g : generators_) {
        if (g.is_zero()) {
            generator_projective_.push_back(true);
            continue;
        }
        EnvelopeResult cover = envelope(g, EnvelopeSide::Projective);
        bool proj = splitness(cover.structural).is_split_epi;
        generator_projective_.push_back(proj);
        generators_projective_ = generators_projective_ && proj;
    }
}

void StableContext::require_projective_generators(const std::string& op) const {
    if (!generators_projective_)
        throw NotProjectiveGeneratorError(op + ": every T generator must be projective for this operation");
}

const HomBasis& StableContext::hom(const Representation& x, const Representation& y) const {
    auto key = std::make_pair(rep_key(x), rep_key(y));
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = hom_cache_.find(key);
        if (it != hom_cache_.end()) return it->second;
    }
    HomBasis computed = hom_basis(x, y);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return hom_cache_.emplace(std::move(key), std::move(computed)).first->second;
}

const Subspace& StableContext::ideal(const Representation& x, const Representation& y) const {
    auto key = std::make_pair(rep_key(x), rep_key(y));
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = ideal_cache_.find(key);
        if (it != ideal_cache_.end()) return it->second;
    }
    std::vector<std::vector<Fel>> products;
    for (const Representation& t : generators_) {
        const HomBasis& in = hom(x, t);
        const HomBasis& out = hom(t, y);
        for (const Morphism& g : out.basis)
            for (const Morphism& h : in.basis) products.push_back(compose(g, h).vec());
    }
    Subspace computed = Subspace::span(algebra_->field(), Morphism::vec_size(x, y), products);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return ideal_cache_.emplace(std::move(key), std::move(computed)).first->second;
}

StableContext StableContext::opposite() const {
    std::vector<Representation> transported;
    transported.reserve(generators_.size());
    for (const Representation& g : generators_) transported.push_back(opposite_transport(g));
    return StableContext(algebra_->opposite(), std::move(transported));
}

Subspace ideal_basis(const StableContext& ctx, const Representation& x, const Representation& y) {
    check_same_algebra(ctx, x, "ideal_basis");
    check_same_algebra(ctx, y, "ideal_basis");
    return ctx.ideal(x, y);
}

std::size_t stable_hom_dim(const StableContext& ctx, const Representation& x, const Representation& y) {
    check_same_algebra(ctx, x, "stable_hom_dim");
    check_same_algebra(ctx, y, "stable_hom_dim");
    return ctx.hom(x, y).dim() - ctx.ideal(x, y).dim();
}

Morphism approximation(const StableContext& ctx, const Representation& m, ApproxSide side) {
    check_same_algebra(ctx, m, "approximation");
    std::vector<Representation> parts;
    std::vector<const Morphism*> components;
    for (const Representation& t : ctx.generators()) {
        const HomBasis& h = side == ApproxSide::Precover ? ctx.hom(t, m) : ctx.hom(m, t);
        for (const Morphism& b : h.basis) {
            parts.push_back(t);
            components.push_back(&b);
        }
    }
    DirectSum sum = direct_sum(ctx.algebra(), parts);
    if (side == ApproxSide::Precover) {
        Morphism p = Morphism::zero(sum.sum, m);
        for (std::size_t k = 0; k < parts.size(); ++k) p = p + compose(*components[k], sum.projections[k]);
        return p;
    }
    Morphism mu = Morphism::zero(m, sum.sum);
    for (std::size_t k = 0; k < parts.size(); ++k) mu = mu + compose(sum.injections[k], *components[k]);
    return mu;
}

Representation loop_suspension(const StableContext& ctx, const Representation& m, LoopSide side) {
    if (side == LoopSide::Loop) return factorize(approximation(ctx, m, ApproxSide::Precover)).kernel_mono.source();
    return factorize(approximation(ctx, m, ApproxSide::Preenvelope)).cokernel_epi.target();
}

StableVerdict is_stable_zero(const StableContext& ctx, const Morphism& f) {
    f.validate("is_stable_zero argument");
    check_same_algebra(ctx, f.source(), "is_stable_zero");
    const Subspace& ideal = ctx.ideal(f.source(), f.target());
    StableVerdict verdict;
    verdict.route = "ideal-membership";
    verdict.answer = ideal.contains(f.vec());
    if (verdict.answer) {
        // explicit factorization through the canonical precover
        Morphism p = approximation(ctx, f.target(), ApproxSide::Precover);
        AffineSystem sys(ctx.algebra()->field());
        MorphismVar var = add_morphism_unknown(sys, f.source(), p.source());
        add_intertwining_rows(sys, var);
        add_left_compose_rows(sys, p, var, f);
        auto sol = sys.solve();
        if (!sol) throw Error("is_stable_zero: ideal member fails to factor through the precover");
        verdict.morphisms.emplace_back("h", extract_morphism(var, sol->particular));
        verdict.morphisms.emplace_back("g", p);
        verdict.objects.emplace_back("through", p.source());
    }
    return verdict;
}

StableVerdict is_in_add(const StableContext& ctx, const Representation& m) {
    check_same_algebra(ctx, m, "is_in_add");
    Morphism p = approximation(ctx, m, ApproxSide::Precover);
    SplitnessResult split = splitness(p);
    StableVerdict verdict;
    verdict.route = "split-precover";
    verdict.answer = split.is_split_epi;
    verdict.morphisms.emplace_back("precover", p);
    if (split.section) verdict.morphisms.emplace_back("section", *split.section);
    return verdict;
}

StableVerdict is_stable_mono(const StableContext& ctx, const Morphism& f) {
    f.validate("is_stable_mono argument");
    check_same_algebra(ctx, f.source(), "is_stable_mono");
    Morphism p = approximation(ctx, f.target(), ApproxSide::Precover);
    PullbackResult pb = pullback(f, p);
    StableVerdict inner = is_stable_zero(ctx, pb.to_x);
    StableVerdict verdict;
    verdict.route = "pullback-parallel-vanishes";
    verdict.answer = inner.answer;
    verdict.objects.emplace_back("pullback_corner", pb.corner);
    verdict.morphisms.emplace_back("parallel_leg", pb.to_x);
    for (auto& nm : inner.morphisms) verdict.morphisms.push_back(std::move(nm));
    return verdict;
}

StableVerdict is_stable_epi(const StableContext& ctx, const Morphism& f) {
    f.validate("is_stable_epi argument");
    check_same_algebra(ctx, f.source(), "is_stable_epi");
    Morphism mu = approximation(ctx, f.source(), ApproxSide::Preenvelope);
    PushoutResult po = pushout(f, mu);
    StableVerdict inner = is_stable_zero(ctx, po.from_x);
    StableVerdict verdict;
    verdict.route = "pushout-parallel-vanishes";
    verdict.answer = inner.answer;
    verdict.objects.emplace_back("pushout_corner", po.corner);
    verdict.morphisms.emplace_back("parallel_leg", po.from_x);
    for (auto& nm : inner.morphisms) verdict.morphisms.push_back(std::move(nm));
    return verdict;
}

StableVerdict is_stable_strong_mono(const StableContext& ctx, const Morphism& f) {
    f.validate("is_stable_strong_mono argument");
    check_same_algebra(ctx, f.source(), "is_stable_strong_mono");
    Morphism p = approximation(ctx, f.target(), ApproxSide::Precover);
    PullbackResult pb = pullback(f, p);
    StableVerdict inner = is_in_add(ctx, pb.corner);
    StableVerdict verdict;
    verdict.route = "pullback-corner-in-add";
    verdict.answer = inner.answer;
    verdict.objects.emplace_back("pullback_corner", pb.corner);
    for (auto& nm : inner.morphisms) verdict.morphisms.push_back(std::move(nm));
    return verdict;
}

StableVerdict is_stable_strong_epi(const StableContext& ctx, const Morphism& f) {
    f.validate("is_stable_strong_epi argument");
    check_same_algebra(ctx, f.source(), "is_stable_strong_epi");
    Morphism mu = approximation(ctx, f.source(), ApproxSide::Preenvelope);
    PushoutResult po = pushout(f, mu);
    StableVerdict inner = is_in_add(ctx, po.corner);
    StableVerdict verdict;
    verdict.route = "pushout-corner-in-add";
    verdict.answer = inner.answer;
    verdict.objects.emplace_back("pushout_corner", po.corner);
    for (auto& nm : inner.morphisms) verdict.morphisms.push_back(std::move(nm));
    return verdict;
}

StableVerdict is_stable_iso(const StableContext& ctx, const Morphism& f) {
    f.validate("is_stable_iso argument");
    check_same_algebra(ctx, f.source(), "is_stable_iso");
    const Representation& x = f.source();
    const Representation& y = f.target();
    const FieldSpec field = ctx.algebra()->field();
    const Subspace& ideal_xx = ctx.ideal(x, x);
    const Subspace& ideal_yy = ctx.ideal(y, y);

    AffineSystem sys(field);
    MorphismVar g1 = add_morphism_unknown(sys, y, x);
    MorphismVar g2 = add_morphism_unknown(sys, y, x);
    std::size_t lam = sys.add_unknowns(ideal_xx.dim());
    std::size_t myu = sys.add_unknowns(ideal_yy.dim());
    add_intertwining_rows(sys, g1);
    add_intertwining_rows(sys, g2);

    auto g1_index = [&](int v, std::size_t r, std::size_t c) {
        std::size_t off = g1.offset;
        for (int w = 0; w < v; ++w) off += y.dim(w) * x.dim(w);
        return off + r * y.dim(v) + c;
    };
    auto g2_index = [&](int v, std::size_t r, std::size_t c) {
        std::size_t off = g2.offset;
        for (int w = 0; w < v; ++w) off += y.dim(w) * x.dim(w);
        return off + r * y.dim(v) + c;
    };

    // g1*f = id_X modulo the ideal of X
    std::size_t coord = 0;
    for (std::size_t v = 0; v < x.dims().size(); ++v)
        for (std::size_t r = 0; r < x.dim(static_cast<int>(v)); ++r)
            for (std::size_t c = 0; c < x.dim(static_cast<int>(v)); ++c, ++coord) {
                std::vector<Fel> row = sys.new_row();
                for (std::size_t k = 0; k < y.dim(static_cast<int>(v)); ++k) {
                    std::size_t idx = g1_index(static_cast<int>(v), r, k);
                    row[idx] = field.add(row[idx], f.map(static_cast<int>(v)).at(k, c));
                }
                for (std::size_t j = 0; j < ideal_xx.dim(); ++j)
                    row[lam + j] = field.sub(row[lam + j], ideal_xx.basis().at(j, coord));
                sys.add_row(std::move(row), r == c ? 1 : 0);
            }

    // f*g2 = id_Y modulo the ideal of Y
    coord = 0;
    for (std::size_t v = 0; v < y.dims().size(); ++v)
        for (std::size_t r = 0; r < y.dim(static_cast<int>(v)); ++r)
            for (std::size_t c = 0; c < y.dim(static_cast<int>(v)); ++c, ++coord) {
                std::vector<Fel> row = sys.new_row();
                for (std::size_t k = 0; k < x.dim(static_cast<int>(v)); ++k) {
                    std::size_t idx = g2_index(static_cast<int>(v), k, c);
                    row[idx] = field.add(row[idx], f.map(static_cast<int>(v)).at(r, k));
                }
                for (std::size_t j = 0; j < ideal_yy.dim(); ++j)
                    row[myu + j] = field.sub(row[myu + j], ideal_yy.basis().at(j, coord));
                sys.add_row(std::move(row), r == c ? 1 : 0);
            }

    StableVerdict verdict;
    verdict.route = "two-sided-stable-inverse";
    auto sol = sys.solve();
    verdict.answer = sol.has_value();
    if (sol) {
        Morphism inv1 = extract_morphism(g1, sol->particular);
        Morphism inv2 = extract_morphism(g2, sol->particular);
        if (!ctx.ideal(y, x).contains((inv1 - inv2).vec()))
            throw Error("is_stable_iso: one-sided inverses differ in the stable quotient");
        verdict.morphisms.emplace_back("left_inverse", inv1);
        verdict.morphisms.emplace_back("right_inverse", inv2);
    }
    return verdict;
}

Morphism epi_representative(const StableContext& ctx, const Morphism& f) {
    if (!is_stable_epi(ctx, f).answer) throw NotStableEpiError("epi_representative: morphism is not a stable epi");
    ctx.require_projective_generators("epi_representative");

    Factorization fac = factorize(f);
    const Morphism& fc = fac.cokernel_epi;
    StableVerdict zero = is_stable_zero(ctx, fc);
    if (!zero.answer) throw Error("epi_representative: cokernel of a stable epi is stably nonzero");
    const Morphism& h = *zero.find_morphism("h");
    const Morphism& p = *zero.find_morphism("g");
    (void)h;

    // lift the precover of the cokernel along the cokernel projection
    AffineSystem sys(ctx.algebra()->field());
    MorphismVar var = add_morphism_unknown(sys, p.source(), f.target());
    add_intertwining_rows(sys, var);
    add_left_compose_rows(sys, fc, var, p);
    auto sol = sys.solve();
    if (!sol) throw Error("epi_representative: projective lifting failed");
    Morphism g = extract_morphism(var, sol->particular);

    DirectSum sum = direct_sum(ctx.algebra(), {f.source(), p.source()});
    Morphism rep = compose(f, sum.projections[0]) + compose(g, sum.projections[1]);
    if (!rep.is_vertexwise_surjective()) throw Error("epi_representative: assembled morphism is not epi");
    return rep;
}

Morphism strong_mono_representative(const StableContext& ctx, const Morphism& f) {
    if (!is_stable_strong_mono(ctx, f).answer)
        throw NotStrongMonoError("strong_mono_representative: morphism is not a stable strong mono");
    Morphism p = approximation(ctx, f.target(), ApproxSide::Precover);
    DirectSum sum = direct_sum(ctx.algebra(), {f.source(), p.source()});
    Morphism rep = compose(f, sum.projections[0]) + compose(p, sum.projections[1]);
    Representation kernel = factorize(rep).kernel_mono.source();
    if (!is_in_add(ctx, kernel).answer)
        throw Error("strong_mono_representative: kernel escaped add(T)");
    return rep;
}

bool verify_factor_certificate(const Morphism& f, const StableVerdict& v) {
    const Morphism* h = v.find_morphism("h");
    const Morphism* g = v.find_morphism("g");
    if (!h || !g) return false;
    return compose(*g, *h) == f;
}

bool verify_in_add_certificate(const StableVerdict& v) {
    const Morphism* p = v.find_morphism("precover");
    const Morphism* s = v.find_morphism("section");
    if (!p || !s) return false;
    Morphism composite = compose(*p, *s);
    return composite == Morphism::identity(p->target());
}

}  // namespace stabcat
