#include "stabcat/module_cat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "stabcat/errors.hpp"

namespace stabcat {

// ---- affine systems over morphism unknowns ------------------------------

MorphismVar add_morphism_unknown(AffineSystem& sys, const Representation& source, const Representation& target) {
    MorphismVar var{sys.add_unknowns(Morphism::vec_size(source, target)), source, target};
    return var;
}

namespace {

// index of entry (r, c) of the vertex-v block inside the concatenated vector
std::size_t entry_index(const MorphismVar& var, int v, std::size_t r, std::size_t c) {
    std::size_t off = var.offset;
    for (int w = 0; w < v; ++w) off += var.source.dim(w) * var.target.dim(w);
    return off + r * var.source.dim(v) + c;
}

}  // namespace

void add_intertwining_rows(AffineSystem& sys, const MorphismVar& var) {
    const Quiver& q = var.source.algebra()->quiver();
    const FieldSpec& f = sys.field();
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        const Matrix& ms = var.source.map(static_cast<int>(a));
        const Matrix& mt = var.target.map(static_cast<int>(a));
        // phi_to * M_a - N_a * phi_from = 0, entrywise
        for (std::size_t r = 0; r < var.target.dim(arr.to); ++r)
            for (std::size_t c = 0; c < var.source.dim(arr.from); ++c) {
                std::vector<Fel> row = sys.new_row();
                for (std::size_t k = 0; k < var.source.dim(arr.to); ++k) {
                    std::size_t idx = entry_index(var, arr.to, r, k);
                    row[idx] = f.add(row[idx], ms.at(k, c));
                }
                for (std::size_t k = 0; k < var.target.dim(arr.from); ++k) {
                    std::size_t idx = entry_index(var, arr.from, k, c);
                    row[idx] = f.sub(row[idx], mt.at(r, k));
                }
                sys.add_row(std::move(row), 0);
            }
    }
}

void add_left_compose_rows(AffineSystem& sys, const Morphism& left, const MorphismVar& var, const Morphism& rhs) {
    const FieldSpec& f = sys.field();
    const std::size_t nv = var.source.dims().size();
    for (std::size_t v = 0; v < nv; ++v) {
        const Matrix& l = left.map(static_cast<int>(v));
        for (std::size_t r = 0; r < l.rows(); ++r)
            for (std::size_t c = 0; c < var.source.dim(static_cast<int>(v)); ++c) {
                std::vector<Fel> row = sys.new_row();
                for (std::size_t k = 0; k < l.cols(); ++k) {
                    std::size_t idx = entry_index(var, static_cast<int>(v), k, c);
                    row[idx] = f.add(row[idx], l.at(r, k));
                }
                sys.add_row(std::move(row), rhs.map(static_cast<int>(v)).at(r, c));
            }
    }
}

void add_right_compose_rows(AffineSystem& sys, const MorphismVar& var, const Morphism& right, const Morphism& rhs) {
    const FieldSpec& f = sys.field();
    const std::size_t nv = var.source.dims().size();
    for (std::size_t v = 0; v < nv; ++v) {
        const Matrix& g = right.map(static_cast<int>(v));
        for (std::size_t r = 0; r < var.target.dim(static_cast<int>(v)); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c) {
                std::vector<Fel> row = sys.new_row();
                for (std::size_t k = 0; k < g.rows(); ++k) {
                    std::size_t idx = entry_index(var, static_cast<int>(v), r, k);
                    row[idx] = f.add(row[idx], g.at(k, c));
                }
                sys.add_row(std::move(row), rhs.map(static_cast<int>(v)).at(r, c));
            }
    }
}

void add_sandwich_rows(AffineSystem& sys, const Morphism& left, const MorphismVar& var, const Morphism& right,
                       const Morphism& rhs) {
    const FieldSpec& f = sys.field();
    const std::size_t nv = var.source.dims().size();
    for (std::size_t v = 0; v < nv; ++v) {
        const Matrix& l = left.map(static_cast<int>(v));
        const Matrix& g = right.map(static_cast<int>(v));
        for (std::size_t r = 0; r < l.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c) {
                std::vector<Fel> row = sys.new_row();
                for (std::size_t i = 0; i < l.cols(); ++i)
                    for (std::size_t j = 0; j < g.rows(); ++j) {
                        std::size_t idx = entry_index(var, static_cast<int>(v), i, j);
                        row[idx] = f.add(row[idx], f.mul(l.at(r, i), g.at(j, c)));
                    }
                sys.add_row(std::move(row), rhs.map(static_cast<int>(v)).at(r, c));
            }
    }
}

Morphism extract_morphism(const MorphismVar& var, const std::vector<Fel>& solution) {
    std::size_t n = Morphism::vec_size(var.source, var.target);
    std::vector<Fel> v(solution.begin() + static_cast<std::ptrdiff_t>(var.offset),
                       solution.begin() + static_cast<std::ptrdiff_t>(var.offset + n));
    return Morphism::from_vec(var.source, var.target, v);
}

// ---- Hom spaces ----------------------------------------------------------

HomBasis hom_basis(const Representation& m, const Representation& n) {
    if (m.algebra() != n.algebra()) throw AlgebraMismatchError("hom_basis: modules over different algebras");
    AffineSystem sys(m.algebra()->field());
    MorphismVar var = add_morphism_unknown(sys, m, n);
    add_intertwining_rows(sys, var);
    auto sol = sys.solve();
    HomBasis out{m, n, {}};
    const Subspace& kernel = sol->kernel;  // homogeneous system always solvable
    for (std::size_t i = 0; i < kernel.dim(); ++i)
        out.basis.push_back(Morphism::from_vec(m, n, kernel.basis().row(i)));
    return out;
}

// ---- kernels, images, cokernels ------------------------------------------

SubmoduleResult submodule_from_subspaces(const Representation& m, const std::vector<Subspace>& spaces) {
    const Quiver& q = m.algebra()->quiver();
    const FieldSpec f = m.algebra()->field();
    const std::size_t nv = q.num_vertices();

    std::vector<std::size_t> dims(nv);
    for (std::size_t v = 0; v < nv; ++v) dims[v] = spaces[v].dim();

    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        const Subspace& src = spaces[static_cast<std::size_t>(arr.from)];
        const Subspace& dst = spaces[static_cast<std::size_t>(arr.to)];
        Matrix induced(f, dst.dim(), src.dim());
        for (std::size_t c = 0; c < src.dim(); ++c) {
            std::vector<Fel> image = m.map(static_cast<int>(a)).apply(src.basis().row(c));
            auto coords = dst.coordinates(image);
            if (!coords) throw ValidationError("submodule_from_subspaces: subspaces not arrow-stable under '" + arr.name + "'");
            for (std::size_t r = 0; r < dst.dim(); ++r) induced.set(r, c, (*coords)[r]);
        }
        maps.push_back(std::move(induced));
    }
    Representation sub(m.algebra(), dims, std::move(maps));

    std::vector<Matrix> incl;
    for (std::size_t v = 0; v < nv; ++v) incl.push_back(spaces[v].basis().transposed());
    return SubmoduleResult{sub, Morphism(sub, m, std::move(incl))};
}

QuotientResult quotient_by_subspaces(const Representation& m, const std::vector<Subspace>& spaces) {
    const Quiver& q = m.algebra()->quiver();
    const FieldSpec f = m.algebra()->field();
    const std::size_t nv = q.num_vertices();

    // complement coordinates are the non-pivot columns of each RREF basis
    std::vector<std::vector<std::size_t>> comp(nv);
    std::vector<Matrix> proj(nv), section(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<bool> is_pivot(m.dim(static_cast<int>(v)), false);
        for (std::size_t p : spaces[v].pivots()) is_pivot[p] = true;
        for (std::size_t c = 0; c < m.dim(static_cast<int>(v)); ++c)
            if (!is_pivot[c]) comp[v].push_back(c);
        Matrix pr(f, comp[v].size(), m.dim(static_cast<int>(v)));
        Matrix se(f, m.dim(static_cast<int>(v)), comp[v].size());
        for (std::size_t c = 0; c < m.dim(static_cast<int>(v)); ++c) {
            std::vector<Fel> e(m.dim(static_cast<int>(v)), 0);
            e[c] = 1;
            std::vector<Fel> r = spaces[v].reduce(e);
            for (std::size_t k = 0; k < comp[v].size(); ++k) pr.set(k, c, r[comp[v][k]]);
        }
        for (std::size_t k = 0; k < comp[v].size(); ++k) se.set(comp[v][k], k, 1);
        proj[v] = std::move(pr);
        section[v] = std::move(se);
    }

    std::vector<std::size_t> dims(nv);
    for (std::size_t v = 0; v < nv; ++v) dims[v] = comp[v].size();
    std::vector<Matrix> maps;
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        maps.push_back(proj[static_cast<std::size_t>(arr.to)] * m.map(static_cast<int>(a)) *
                       section[static_cast<std::size_t>(arr.from)]);
    }
    Representation quotient(m.algebra(), dims, std::move(maps));
    return QuotientResult{quotient, Morphism(m, quotient, std::move(proj))};
}

SubmoduleResult generated_submodule(const Representation& m,
                                    const std::vector<std::vector<std::vector<Fel>>>& generators) {
    const Quiver& q = m.algebra()->quiver();
    const FieldSpec f = m.algebra()->field();
    const std::size_t nv = q.num_vertices();

    std::vector<Subspace> spaces;
    spaces.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) spaces.push_back(Subspace::span(f, m.dim(static_cast<int>(v)), generators[v]));

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < q.num_arrows(); ++a) {
            const Arrow& arr = q.arrow(static_cast<int>(a));
            Subspace& dst = spaces[static_cast<std::size_t>(arr.to)];
            const Subspace& src = spaces[static_cast<std::size_t>(arr.from)];
            std::vector<std::vector<Fel>> images;
            for (std::size_t r = 0; r < src.dim(); ++r) {
                std::vector<Fel> img = m.map(static_cast<int>(a)).apply(src.basis().row(r));
                if (!dst.contains(img)) images.push_back(std::move(img));
            }
            if (!images.empty()) {
                dst = dst.sum(Subspace::span(f, dst.ambient_dim(), images));
                changed = true;
            }
        }
    }
    return submodule_from_subspaces(m, spaces);
}

std::vector<Subspace> image_subspaces(const Morphism& f) {
    std::vector<Subspace> out;
    out.reserve(f.maps().size());
    for (const Matrix& m : f.maps()) out.push_back(column_space(m));
    return out;
}

Factorization factorize(const Morphism& f) {
    const Representation& x = f.source();
    const Representation& y = f.target();
    const std::size_t nv = x.dims().size();

    std::vector<Subspace> kernels, images;
    kernels.reserve(nv);
    images.reserve(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        kernels.push_back(kernel_basis(f.map(static_cast<int>(v))));
        images.push_back(column_space(f.map(static_cast<int>(v))));
    }

    SubmoduleResult ker = submodule_from_subspaces(x, kernels);
    SubmoduleResult img = submodule_from_subspaces(y, images);
    QuotientResult cok = quotient_by_subspaces(y, images);

    // image_epi reads off pivot coordinates of f(x) in the RREF image basis
    std::vector<Matrix> epi_maps;
    for (std::size_t v = 0; v < nv; ++v) {
        const Subspace& im = images[v];
        Matrix pick(x.algebra()->field(), im.dim(), y.dim(static_cast<int>(v)));
        for (std::size_t i = 0; i < im.dim(); ++i) pick.set(i, im.pivots()[i], 1);
        epi_maps.push_back(pick * f.map(static_cast<int>(v)));
    }

    return Factorization{ker.inclusion, Morphism(x, img.sub, std::move(epi_maps)), img.inclusion, cok.projection};
}

PullbackResult pullback(const Morphism& f, const Morphism& g) {
    if (!(f.target() == g.target())) throw TargetMismatchError("pullback: morphisms have different targets");
    DirectSum sum = direct_sum(f.source().algebra(), {f.source(), g.source()});
    Morphism h = compose(f, sum.projections[0]) - compose(g, sum.projections[1]);
    Factorization fac = factorize(h);
    return PullbackResult{fac.kernel_mono.source(), compose(sum.projections[0], fac.kernel_mono),
                          compose(sum.projections[1], fac.kernel_mono)};
}

PushoutResult pushout(const Morphism& f, const Morphism& g) {
    if (!(f.source() == g.source())) throw SourceMismatchError("pushout: morphisms have different sources");
    DirectSum sum = direct_sum(f.target().algebra(), {f.target(), g.target()});
    Morphism h = compose(sum.injections[0], f) - compose(sum.injections[1], g);
    Factorization fac = factorize(h);
    return PushoutResult{fac.cokernel_epi.target(), compose(fac.cokernel_epi, sum.injections[0]),
                         compose(fac.cokernel_epi, sum.injections[1])};
}

// ---- structure -----------------------------------------------------------

RadicalSocleTop radical_socle_top(const Representation& m) {
    const Quiver& q = m.algebra()->quiver();
    const FieldSpec f = m.algebra()->field();
    const std::size_t nv = q.num_vertices();

    std::vector<std::vector<std::vector<Fel>>> incoming(nv);
    for (std::size_t a = 0; a < q.num_arrows(); ++a) {
        const Arrow& arr = q.arrow(static_cast<int>(a));
        const Matrix& mat = m.map(static_cast<int>(a));
        for (std::size_t c = 0; c < mat.cols(); ++c) incoming[static_cast<std::size_t>(arr.to)].push_back(mat.col(c));
    }
    std::vector<Subspace> rad;
    for (std::size_t v = 0; v < nv; ++v) rad.push_back(Subspace::span(f, m.dim(static_cast<int>(v)), incoming[v]));

    std::vector<Subspace> soc;
    for (std::size_t v = 0; v < nv; ++v) {
        Matrix stacked(f, 0, m.dim(static_cast<int>(v)));
        for (std::size_t a = 0; a < q.num_arrows(); ++a)
            if (q.arrow(static_cast<int>(a)).from == static_cast<int>(v))
                stacked = Matrix::vstack(stacked, m.map(static_cast<int>(a)));
        soc.push_back(kernel_basis(stacked));
    }

    SubmoduleResult r = submodule_from_subspaces(m, rad);
    SubmoduleResult s = submodule_from_subspaces(m, soc);
    QuotientResult t = quotient_by_subspaces(m, rad);
    return RadicalSocleTop{r.sub, r.inclusion, s.sub, s.inclusion, t.quotient, t.projection};
}

EnvelopeResult envelope(const Representation& m, EnvelopeSide side) {
    const auto& algebra = m.algebra();
    const std::size_t nv = algebra->quiver().num_vertices();

    if (side == EnvelopeSide::Injective) {
        RadicalSocleTop rst = radical_socle_top(m);
        std::vector<Representation> parts;
        std::vector<int> part_vertex;
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t k = 0; k < rst.socle.dim(static_cast<int>(v)); ++k) {
                parts.push_back(standard_module(algebra, StandardKind::Injective, static_cast<int>(v)));
                part_vertex.push_back(static_cast<int>(v));
            }
        DirectSum sum = direct_sum(algebra, parts);

        // embed the socle: the k-th socle coordinate at v lands on the socle
        // generator of the k-th injective(v) copy
        std::vector<Matrix> phi_maps;
        for (std::size_t v = 0; v < nv; ++v)
            phi_maps.emplace_back(algebra->field(), sum.sum.dim(static_cast<int>(v)), rst.socle.dim(static_cast<int>(v)));
        std::vector<std::size_t> seen(nv, 0);
        for (std::size_t part = 0; part < parts.size(); ++part) {
            int v = part_vertex[part];
            RadicalSocleTop part_rst = radical_socle_top(parts[part]);
            if (part_rst.socle.total_dim() != 1 || part_rst.socle.dim(v) != 1)
                throw ValidationError("envelope: injective hull of a simple is expected to have a simple socle");
            std::vector<Fel> gen = part_rst.socle_inclusion.map(v).col(0);
            std::vector<Fel> embedded = sum.injections[part].map(v).apply(gen);
            std::size_t k = seen[static_cast<std::size_t>(v)]++;
            for (std::size_t r = 0; r < embedded.size(); ++r) phi_maps[static_cast<std::size_t>(v)].set(r, k, embedded[r]);
        }
        Morphism phi(rst.socle, sum.sum, std::move(phi_maps));

        AffineSystem sys(algebra->field());
        MorphismVar var = add_morphism_unknown(sys, m, sum.sum);
        add_intertwining_rows(sys, var);
        add_right_compose_rows(sys, var, rst.socle_inclusion, phi);
        auto sol = sys.solve();
        if (!sol) throw ValidationError("envelope: socle embedding does not extend (module is not over this algebra?)");
        Morphism eps = extract_morphism(var, sol->particular);
        if (!eps.is_vertexwise_injective())
            throw ValidationError("envelope: extension of an essential embedding failed to be injective");
        return EnvelopeResult{sum.sum, eps};
    }

    RadicalSocleTop rst = radical_socle_top(m);
    std::vector<Representation> parts;
    std::vector<int> part_vertex;
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t k = 0; k < rst.top.dim(static_cast<int>(v)); ++k) {
            parts.push_back(standard_module(algebra, StandardKind::Projective, static_cast<int>(v)));
            part_vertex.push_back(static_cast<int>(v));
        }
    DirectSum sum = direct_sum(algebra, parts);

    // the trivial-path coordinate of each projective copy maps onto the
    // matching top coordinate
    std::vector<Matrix> chi_maps;
    for (std::size_t v = 0; v < nv; ++v)
        chi_maps.emplace_back(algebra->field(), rst.top.dim(static_cast<int>(v)), sum.sum.dim(static_cast<int>(v)));
    std::vector<std::size_t> seen(nv, 0);
    for (std::size_t part = 0; part < parts.size(); ++part) {
        int v = part_vertex[part];
        std::vector<Fel> e0(parts[part].dim(v), 0);
        e0[0] = 1;  // the trivial path is the first basis path at its own vertex
        std::vector<Fel> col = sum.injections[part].map(v).apply(e0);
        std::size_t k = seen[static_cast<std::size_t>(v)]++;
        for (std::size_t c = 0; c < col.size(); ++c)
            if (col[c] != 0) chi_maps[static_cast<std::size_t>(v)].set(k, c, col[c]);
    }
    Morphism chi(sum.sum, rst.top, std::move(chi_maps));

    AffineSystem sys(algebra->field());
    MorphismVar var = add_morphism_unknown(sys, sum.sum, m);
    add_intertwining_rows(sys, var);
    add_left_compose_rows(sys, rst.top_projection, var, chi);
    auto sol = sys.solve();
    if (!sol) throw ValidationError("envelope: projective lift does not exist");
    Morphism pi = extract_morphism(var, sol->particular);
    if (!pi.is_vertexwise_surjective()) throw ValidationError("envelope: projective cover failed to be surjective");
    return EnvelopeResult{sum.sum, pi};
}

SplitnessResult splitness(const Morphism& f) {
    SplitnessResult out;
    {
        AffineSystem sys(f.source().algebra()->field());
        MorphismVar var = add_morphism_unknown(sys, f.target(), f.source());
        add_intertwining_rows(sys, var);
        add_left_compose_rows(sys, f, var, Morphism::identity(f.target()));
        if (auto sol = sys.solve()) {
            out.is_split_epi = true;
            out.section = extract_morphism(var, sol->particular);
        }
    }
    {
        AffineSystem sys(f.source().algebra()->field());
        MorphismVar var = add_morphism_unknown(sys, f.target(), f.source());
        add_intertwining_rows(sys, var);
        add_right_compose_rows(sys, var, f, Morphism::identity(f.source()));
        if (auto sol = sys.solve()) {
            out.is_split_mono = true;
            out.retraction = extract_morphism(var, sol->particular);
        }
    }
    return out;
}

namespace {

// all subspaces of F_p^d as RREF bases, enumerated deterministically
void enumerate_subspaces_of(FieldSpec f, std::size_t d, std::vector<Subspace>& out) {
    out.push_back(Subspace(f, d));  // zero space
    std::vector<std::size_t> pivots;
    std::function<void(std::size_t, std::size_t)> choose_pivots = [&](std::size_t start, std::size_t r) {
        if (r == 0) {
            // fill free entries: positions (i, c) with c > pivots[i], c not a pivot
            std::vector<std::pair<std::size_t, std::size_t>> free_pos;
            std::vector<bool> is_pivot(d, false);
            for (std::size_t p : pivots) is_pivot[p] = true;
            for (std::size_t i = 0; i < pivots.size(); ++i)
                for (std::size_t c = pivots[i] + 1; c < d; ++c)
                    if (!is_pivot[c]) free_pos.emplace_back(i, c);
            std::vector<Fel> assignment(free_pos.size(), 0);
            std::function<void(std::size_t)> fill = [&](std::size_t k) {
                if (k == free_pos.size()) {
                    Matrix basis(f, pivots.size(), d);
                    for (std::size_t i = 0; i < pivots.size(); ++i) basis.set(i, pivots[i], 1);
                    for (std::size_t i = 0; i < free_pos.size(); ++i)
                        basis.set(free_pos[i].first, free_pos[i].second, assignment[i]);
                    out.push_back(Subspace::span_matrix_rows(basis));
                    return;
                }
                for (Fel v = 0; v < f.p(); ++v) {
                    assignment[k] = v;
                    fill(k + 1);
                }
            };
            fill(0);
            return;
        }
        for (std::size_t p = start; p + r <= d; ++p) {
            pivots.push_back(p);
            choose_pivots(p + 1, r - 1);
            pivots.pop_back();
        }
    };
    for (std::size_t rank = 1; rank <= d; ++rank) choose_pivots(0, rank);
}

std::size_t count_subspaces(std::uint32_t p, std::size_t d) {
    // sum of Gaussian binomials, computed by direct recursion on small d
    // G(d, r) counts r-dim subspaces of F_p^d
    std::vector<std::vector<double>> g(d + 1, std::vector<double>(d + 1, 0));
    for (std::size_t n = 0; n <= d; ++n) {
        g[n][0] = 1;
        for (std::size_t r = 1; r <= n; ++r)
            g[n][r] = g[n - 1][r - 1] + g[n - 1][r] * std::pow(double(p), double(r));
    }
    double total = 0;
    for (std::size_t r = 0; r <= d; ++r) total += g[d][r];
    return total > 1e18 ? std::size_t(-1) : static_cast<std::size_t>(total);
}

}  // namespace

std::vector<SubmoduleResult> enumerate_submodules(const Representation& m, std::size_t budget, bool force) {
    const FieldSpec f = m.algebra()->field();
    if (m.total_dim() > budget)
        throw BudgetExceededError("enumerate_submodules: total dimension " + std::to_string(m.total_dim()) +
                                  " exceeds budget " + std::to_string(budget));
    std::size_t max_dim = 0;
    for (std::size_t d : m.dims()) max_dim = std::max(max_dim, d);
    if (f.p() != 2 && max_dim > 1 && !force)
        throw BudgetExceededError("enumerate_submodules: p > 2 with vertex spaces beyond lines needs force");

    const std::size_t nv = m.dims().size();
    std::vector<std::vector<Subspace>> choices(nv);
    std::size_t combinations = 1;
    for (std::size_t v = 0; v < nv; ++v) {
        std::size_t count = count_subspaces(f.p(), m.dim(static_cast<int>(v)));
        if (count == std::size_t(-1) || combinations > (std::size_t(1) << 22) / std::max<std::size_t>(count, 1))
            throw BudgetExceededError("enumerate_submodules: subspace lattice too large");
        combinations *= count;
        enumerate_subspaces_of(f, m.dim(static_cast<int>(v)), choices[v]);
    }

    std::vector<SubmoduleResult> out;
    std::vector<std::size_t> pick(nv, 0);
    const Quiver& q = m.algebra()->quiver();
    while (true) {
        bool stable = true;
        for (std::size_t a = 0; a < q.num_arrows() && stable; ++a) {
            const Arrow& arr = q.arrow(static_cast<int>(a));
            const Subspace& src = choices[static_cast<std::size_t>(arr.from)][pick[static_cast<std::size_t>(arr.from)]];
            const Subspace& dst = choices[static_cast<std::size_t>(arr.to)][pick[static_cast<std::size_t>(arr.to)]];
            for (std::size_t r = 0; r < src.dim() && stable; ++r)
                if (!dst.contains(m.map(static_cast<int>(a)).apply(src.basis().row(r)))) stable = false;
        }
        if (stable) {
            std::vector<Subspace> spaces;
            spaces.reserve(nv);
            for (std::size_t v = 0; v < nv; ++v) spaces.push_back(choices[v][pick[v]]);
            out.push_back(submodule_from_subspaces(m, spaces));
        }
        std::size_t v = 0;
        while (v < nv && ++pick[v] == choices[v].size()) pick[v++] = 0;
        if (v == nv) break;
    }
    return out;
}

// ---- extensions ----------------------------------------------------------

void ShortExactSequence::validate(const std::string& name) const {
    mono.validate(name + " (mono)");
    epi.validate(name + " (epi)");
    if (!(mono.target() == epi.source())) throw ValidationError(name + ": middle terms differ");
    if (!mono.is_vertexwise_injective()) throw ValidationError(name + ": left map is not injective");
    if (!epi.is_vertexwise_surjective()) throw ValidationError(name + ": right map is not surjective");
    if (!compose(epi, mono).is_zero()) throw ValidationError(name + ": composite is nonzero");
    for (std::size_t v = 0; v < mono.maps().size(); ++v) {
        if (!(column_space(mono.map(static_cast<int>(v))) == kernel_basis(epi.map(static_cast<int>(v)))))
            throw ValidationError(name + ": image != kernel at a vertex");
    }
}

Ext1Result ext1(const Representation& y, const Representation& t) {
    if (y.algebra() != t.algebra()) throw AlgebraMismatchError("ext1: modules over different algebras");
    EnvelopeResult cover = envelope(y, EnvelopeSide::Projective);
    Factorization fac = factorize(cover.structural);

    Ext1Result out;
    out.cover = cover.hull;
    out.cover_epi = cover.structural;
    out.kernel_mono = fac.kernel_mono;

    HomBasis hom_kt = hom_basis(fac.kernel_mono.source(), t);
    HomBasis hom_pt = hom_basis(cover.hull, t);

    std::size_t n = Morphism::vec_size(fac.kernel_mono.source(), t);
    std::vector<std::vector<Fel>> restricted;
    for (const Morphism& psi : hom_pt.basis) restricted.push_back(compose(psi, fac.kernel_mono).vec());
    Subspace image = Subspace::span(y.algebra()->field(), n, restricted);

    for (const Morphism& h : hom_kt.basis) {
        if (image.contains(h.vec())) continue;
        out.cocycles.push_back(h);
        image = image.sum(Subspace::span(y.algebra()->field(), n, {h.vec()}));
    }
    out.dimension = out.cocycles.size();
    return out;
}

ShortExactSequence extension_from_cocycle(const Representation& y, const Representation& t, const Morphism& cocycle) {
    Ext1Result presentation = ext1(y, t);
    if (!(cocycle.source() == presentation.kernel_mono.source()) || !(cocycle.target() == t))
        throw ShapeMismatchError("extension_from_cocycle: cocycle endpoints do not match the cover kernel");
    cocycle.validate("cocycle");

    PushoutResult po = pushout(presentation.kernel_mono, cocycle);

    AffineSystem sys(y.algebra()->field());
    MorphismVar var = add_morphism_unknown(sys, po.corner, y);
    add_intertwining_rows(sys, var);
    add_right_compose_rows(sys, var, po.from_x, presentation.cover_epi);
    add_right_compose_rows(sys, var, po.from_w, Morphism::zero(t, y));
    auto sol = sys.solve();
    if (!sol) throw ValidationError("extension_from_cocycle: induced epimorphism does not exist");

    ShortExactSequence ses{po.from_w, extract_morphism(var, sol->particular)};
    ses.validate("extension");
    return ses;
}

// ---- isomorphism testing --------------------------------------------------

namespace {

bool combo_invertible(const HomBasis& hom, const std::vector<Fel>& coeffs) {
    const FieldSpec f = hom.source.algebra()->field();
    Morphism combo = Morphism::zero(hom.source, hom.target);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) combo = combo + hom.basis[i].scaled(coeffs[i]);
    (void)f;
    for (std::size_t v = 0; v < combo.maps().size(); ++v) {
        const Matrix& m = combo.map(static_cast<int>(v));
        if (rref(m).rank != m.rows()) return false;
    }
    return true;
}

std::optional<Morphism> build_combo(const HomBasis& hom, const std::vector<Fel>& coeffs) {
    Morphism combo = Morphism::zero(hom.source, hom.target);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) combo = combo + hom.basis[i].scaled(coeffs[i]);
    return combo;
}

}  // namespace

std::optional<Morphism> find_isomorphism(const Representation& a, const Representation& b) {
    if (a.algebra() != b.algebra()) throw AlgebraMismatchError("find_isomorphism: modules over different algebras");
    if (a.dims() != b.dims()) return std::nullopt;
    if (a.total_dim() == 0) return Morphism::zero(a, b);

    HomBasis hom = hom_basis(a, b);
    const std::size_t k = hom.dim();
    if (k == 0) return std::nullopt;
    const FieldSpec f = a.algebra()->field();

    // the product of vertex determinants is a polynomial of degree <= total
    // dim in each coefficient; a grid larger than the degree is exact
    std::size_t grid = std::min<std::size_t>(f.p(), a.total_dim() + 1);
    double combos = std::pow(double(grid), double(k));
    if (combos <= double(1 << 20)) {
        std::vector<Fel> coeffs(k, 0);
        while (true) {
            if (combo_invertible(hom, coeffs)) return build_combo(hom, coeffs);
            std::size_t i = 0;
            while (i < k && ++coeffs[i] == grid) coeffs[i++] = 0;
            if (i == k) break;
        }
        // exact when grid exceeds the degree bound (p > total dim, or p == 2
        // where the grid is the whole field)
        if (grid == f.p() || grid > a.total_dim()) return std::nullopt;
    }
    // fallback for large hom spaces: seeded random sampling
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int tries = 0; tries < 512; ++tries) {
        std::vector<Fel> coeffs(k);
        for (auto& c : coeffs) c = static_cast<Fel>(rng() % f.p());
        if (combo_invertible(hom, coeffs)) return build_combo(hom, coeffs);
    }
    return std::nullopt;
}

bool is_isomorphic(const Representation& a, const Representation& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace stabcat
