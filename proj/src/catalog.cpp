#include "stabcat/catalog.hpp"

#include <algorithm>

#include "stabcat/balance.hpp"
#include "stabcat/errors.hpp"
#include "stabcat/module_cat.hpp"
#include "stabcat/stable_cat.hpp"

namespace stabcat {

namespace {

Representation projective(const Workspace& w, int v) {
    return standard_module(w.algebra, StandardKind::Projective, v);
}

// retarget a quotient projection onto a named structural twin
Morphism onto(const Morphism& f, const Representation& named_target) {
    if (!(f.target() == named_target)) throw Error("catalog: computed quotient differs from the named module");
    return Morphism(f.source(), named_target, f.maps());
}

Scenario make_a3(FieldSpec field) {
    Scenario sc;
    sc.name = "a3";
    sc.notes = "linear quiver 1->2->3; T is generated by the projective-injective P1";

    Quiver quiver({"1", "2", "3"}, {{"a", 0, 1}, {"b", 1, 2}});
    Workspace& w = sc.workspace;
    w.algebra = build_algebra(quiver, {}, field);

    for (int v = 0; v < 3; ++v) {
        w.modules.emplace_back("P" + std::to_string(v + 1), projective(w, v));
        w.modules.emplace_back("S" + std::to_string(v + 1), standard_module(w.algebra, StandardKind::Simple, v));
    }
    w.modules.emplace_back("I2", standard_module(w.algebra, StandardKind::Injective, 1));

    const Representation& p2 = w.module("P2");
    const Representation& s2 = w.module("S2");
    const Representation& s1 = w.module("S1");
    const Representation& i2 = w.module("I2");

    Morphism f = onto(radical_socle_top(p2).top_projection, s2);
    Morphism p = onto(radical_socle_top(i2).top_projection, s1);
    Morphism j(s2, i2, {Matrix(field, 1, 0), Matrix::identity(field, 1), Matrix(field, 0, 0)});
    j.validate("a3 morphism j");

    w.morphisms.emplace_back("f", f);
    w.morphisms.emplace_back("j", j);
    w.morphisms.emplace_back("p", p);
    w.morphisms.emplace_back("jf", compose(j, f));
    w.subcategories.emplace_back("T", std::vector<std::string>{"P1"});

    sc.facts = {
        {"algebra_dim", Json::object(), 6, "path count for the relation-free linear quiver"},
        {"hom_dim", {{"from", "P2"}, {"to", "P1"}}, 1, "radical embedding spans Hom(P2, P1)"},
        {"decide", {{"op", "is-stable-epi"}, {"morphism", "f"}, {"T", "T"}}, false, "top of P2 is not reached stably"},
        {"decide", {{"op", "is-stable-zero"}, {"morphism", "jf"}, {"T", "T"}}, true, "composite factors through P1"},
        {"decide", {{"op", "is-stable-zero"}, {"morphism", "p"}, {"T", "T"}}, false, "top projection of I2 survives"},
        {"loop_is_zero", {{"module", "S2"}, {"T", "T"}}, true, "the precover of S2 is the zero map"},
        {"stable_hom_dim", {{"from", "S2"}, {"to", "S2"}, {"T", "T"}}, 1, "S2 stays nonzero in the quotient"},
        {"stable_hom_dim", {{"from", "P2"}, {"to", "S2"}, {"T", "T"}}, 1, "ideal vanishes on this pair"},
        {"balance_verdict", {{"T", "T"}, {"mode", "balance"}}, "undetermined", "projective-injective generators"},
    };
    return sc;
}

Scenario make_six_vertex(FieldSpec field) {
    Scenario sc;
    sc.name = "six_vertex";
    sc.notes = "six-vertex bound quiver; arrows oriented so Ae_i = projective(i); T = add(A)";

    Quiver quiver({"1", "2", "3", "4", "5", "6"},
                  {{"alpha", 0, 1}, {"beta", 1, 2}, {"gamma", 2, 3}, {"delta", 3, 0}, {"x", 4, 1}, {"y", 5, 4}});
    std::vector<std::vector<std::string>> relations = {
        {"y", "x"}, {"x", "beta"}, {"beta", "gamma"}, {"gamma", "delta", "alpha"}, {"delta", "alpha", "beta"}};

    Workspace& w = sc.workspace;
    w.algebra = build_algebra(quiver, relations, field);

    for (int v = 0; v < 6; ++v) w.modules.emplace_back("Ae" + std::to_string(v + 1), projective(w, v));

    DirectSum sum45 = direct_sum(w.algebra, {w.module("Ae4"), w.module("Ae5")});
    w.modules.emplace_back("Ae4_plus_Ae5", sum45.sum);

    // N is generated by (-delta*alpha, x) in degree 2
    std::vector<std::vector<std::vector<Fel>>> gens(6);
    gens[1].push_back({field.neg(1), 1});
    SubmoduleResult n = generated_submodule(sum45.sum, gens);
    w.modules.emplace_back("N", n.sub);

    QuotientResult e = quotient_by_subspaces(sum45.sum, image_subspaces(n.inclusion));
    w.modules.emplace_back("E", e.quotient);

    Morphism i = compose(e.projection, sum45.injections[0]);
    Morphism j = compose(e.projection, sum45.injections[1]);

    QuotientResult e_mod = quotient_by_subspaces(e.quotient, image_subspaces(i));
    w.modules.emplace_back("E_mod_Ae4", e_mod.quotient);

    std::vector<Representation> projectives;
    for (int v = 0; v < 6; ++v) projectives.push_back(w.module("Ae" + std::to_string(v + 1)));
    DirectSum reg = direct_sum(w.algebra, projectives);
    w.modules.emplace_back("A", reg.sum);

    // f sends the Ae4 component a to gamma*a, g sends the Ae5 component b to y*b
    Morphism mult_gamma = path_left_multiplication(w.algebra, {"gamma"});  // Ae4 -> Ae3
    Morphism mult_y = path_left_multiplication(w.algebra, {"y"});          // Ae5 -> Ae6
    Morphism f0 = compose(mult_gamma, sum45.projections[0]);
    Morphism g0 = compose(mult_y, sum45.projections[1]);

    auto descend = [&](const Morphism& raw) {
        AffineSystem sys(field);
        MorphismVar var = add_morphism_unknown(sys, e.quotient, raw.target());
        add_intertwining_rows(sys, var);
        add_right_compose_rows(sys, var, e.projection, raw);
        auto sol = sys.solve();
        if (!sol) throw Error("catalog: map does not descend to E");
        return extract_morphism(var, sol->particular);
    };
    Morphism f_tilde = descend(f0);
    Morphism g_tilde = descend(g0);

    w.morphisms.emplace_back("i", i);
    w.morphisms.emplace_back("j", j);
    w.morphisms.emplace_back("f", compose(reg.injections[2], f_tilde));
    w.morphisms.emplace_back("g", compose(reg.injections[5], g_tilde));
    w.morphisms.emplace_back("q", e_mod.projection);
    w.morphisms.emplace_back("n_incl", n.inclusion);

    std::vector<std::string> generators;
    for (int v = 0; v < 6; ++v) generators.push_back("Ae" + std::to_string(v + 1));
    w.subcategories.emplace_back("T", generators);

    sc.facts = {
        {"algebra_dim", Json::object(), 15, "path enumeration under the five monomial relations"},
        {"module_total_dim", {{"module", "N"}}, 1, "the generator dies under every arrow"},
        {"module_total_dim", {{"module", "E"}}, 4, "dims of Ae4 + Ae5 minus N"},
        {"hom_dim", {{"from", "E"}, {"to", "A"}}, 2, "spanned by the two component maps"},
        {"morphism_nonzero", {{"left", "f"}, {"right", "i"}}, true, "f*i != 0"},
        {"morphism_nonzero", {{"left", "g"}, {"right", "j"}}, true, "g*j != 0"},
        {"envelope_isomorphic", {{"module", "Ae4"}, {"target", "E"}}, true, "injective envelope of Ae4"},
        {"envelope_isomorphic", {{"module", "Ae5"}, {"target", "E"}}, true, "injective envelope of Ae5"},
        {"weak_balance_all_pass", {{"T", "T"}}, true, "restriction maps have nonzero image"},
        {"decide", {{"op", "is-stable-mono"}, {"morphism", "q"}, {"T", "T"}}, true, "kernel is a generator"},
        {"decide", {{"op", "is-stable-epi"}, {"morphism", "q"}, {"T", "T"}}, true, "every functional corrects"},
        {"decide", {{"op", "is-strong-mono"}, {"morphism", "q"}, {"T", "T"}}, true, "kernel lies in add(T)"},
        {"decide", {{"op", "is-strong-epi"}, {"morphism", "q"}, {"T", "T"}}, false, "preenvelope image does not split"},
        {"decide", {{"op", "is-iso"}, {"morphism", "q"}, {"T", "T"}}, false, "q is not a retraction"},
        {"balance_verdict", {{"T", "T"}, {"mode", "balance"}}, "not_balanced", "witness is the projection q"},
        {"balance_verdict", {{"T", "T"}, {"mode", "weak_balance"}}, "undetermined", "no strong witness exists"},
    };
    return sc;
}

Scenario make_a2_serre(FieldSpec field) {
    Scenario sc;
    sc.name = "a2_serre";
    sc.notes = "linear quiver 1->2 with the sink-supported Serre class";

    Quiver quiver({"1", "2"}, {{"a", 0, 1}});
    Workspace& w = sc.workspace;
    w.algebra = build_algebra(quiver, {}, field);

    for (int v = 0; v < 2; ++v) {
        w.modules.emplace_back("P" + std::to_string(v + 1), projective(w, v));
        w.modules.emplace_back("S" + std::to_string(v + 1), standard_module(w.algebra, StandardKind::Simple, v));
    }
    Morphism top = onto(radical_socle_top(w.module("P1")).top_projection, w.module("S1"));
    w.morphisms.emplace_back("p1_to_s1", top);
    w.subcategories.emplace_back("T", std::vector<std::string>{"P2"});
    w.serre_supports.emplace_back("sink", std::vector<std::string>{"2"});

    sc.facts = {
        {"serre_torsion_total_dim", {{"module", "P1"}, {"support", "sink"}}, 1, "t(P1) is the sink socle"},
        {"serre_balance_verdict", {{"support", "sink"}}, "not_balanced", "canonical projection P1 -> S1"},
        {"ext_dim", {{"from", "S1"}, {"to", "S2"}}, 1, "unique extension glues P1"},
    };
    return sc;
}

Scenario make_tn(std::size_t n, FieldSpec field) {
    Scenario sc;
    sc.name = "tn(" + std::to_string(n) + ")";
    sc.notes = "linear quiver with " + std::to_string(n) + " vertices; T is the projective-injective column";

    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    for (std::size_t v = 1; v <= n; ++v) vertices.push_back(std::to_string(v));
    for (std::size_t v = 1; v < n; ++v)
        arrows.push_back({"a" + std::to_string(v), static_cast<int>(v - 1), static_cast<int>(v)});
    Workspace& w = sc.workspace;
    w.algebra = build_algebra(Quiver(vertices, arrows), {}, field);

    for (std::size_t v = 0; v < n; ++v) {
        w.modules.emplace_back("P" + std::to_string(v + 1), projective(w, static_cast<int>(v)));
        w.modules.emplace_back("S" + std::to_string(v + 1),
                               standard_module(w.algebra, StandardKind::Simple, static_cast<int>(v)));
    }
    w.subcategories.emplace_back("T", std::vector<std::string>{"P1"});

    sc.facts = {
        {"algebra_dim", Json::object(), static_cast<Json::number_unsigned_t>(n * (n + 1) / 2), "one path per interval"},
        {"balance_verdict", {{"T", "T"}, {"mode", "balance"}}, "undetermined", "projective-injective generator"},
    };
    if (n == 1)
        sc.facts.push_back({"stable_hom_dim", {{"from", "S1"}, {"to", "S1"}, {"T", "T"}}, 0, "stable category is zero"});
    return sc;
}

}  // namespace

bool is_known_scenario(const std::string& name) {
    if (name == "a3" || name == "six_vertex" || name == "a2_serre") return true;
    return name.rfind("tn(", 0) == 0 && name.back() == ')';
}

Scenario builtin_scenario(const std::string& name, FieldSpec field) {
    if (name == "a3") return make_a3(field);
    if (name == "six_vertex") return make_six_vertex(field);
    if (name == "a2_serre") return make_a2_serre(field);
    if (name.rfind("tn(", 0) == 0 && name.back() == ')') {
        std::string inner = name.substr(3, name.size() - 4);
        std::size_t n = 0;
        for (char c : inner) {
            if (c < '0' || c > '9') throw UnknownScenarioError("unknown scenario '" + name + "'");
            n = n * 10 + static_cast<std::size_t>(c - '0');
        }
        if (n == 0 || n > 16) throw UnknownScenarioError("tn(n) needs 1 <= n <= 16");
        return make_tn(n, field);
    }
    throw UnknownScenarioError("unknown scenario '" + name + "'");
}

Json evaluate_fact(const Workspace& w, const ExpectedFact& fact, std::uint64_t seed, std::size_t budget) {
    auto ctx_for = [&](const std::string& t) {
        return StableContext(w.algebra, w.subcategory_modules(fact.args.value(t, std::string("T"))));
    };

    if (fact.check == "algebra_dim") return w.algebra->dim();
    if (fact.check == "module_total_dim") return w.module(fact.args["module"].get<std::string>()).total_dim();
    if (fact.check == "hom_dim")
        return hom_basis(w.module(fact.args["from"].get<std::string>()), w.module(fact.args["to"].get<std::string>()))
            .dim();
    if (fact.check == "stable_hom_dim") {
        StableContext ctx = ctx_for("T");
        return stable_hom_dim(ctx, w.module(fact.args["from"].get<std::string>()),
                              w.module(fact.args["to"].get<std::string>()));
    }
    if (fact.check == "decide") {
        StableContext ctx = ctx_for("T");
        const std::string op = fact.args["op"].get<std::string>();
        if (op == "in-add") return is_in_add(ctx, w.module(fact.args["module"].get<std::string>())).answer;
        const Morphism& f = w.morphism(fact.args["morphism"].get<std::string>());
        if (op == "is-stable-zero") return is_stable_zero(ctx, f).answer;
        if (op == "is-stable-mono") return is_stable_mono(ctx, f).answer;
        if (op == "is-stable-epi") return is_stable_epi(ctx, f).answer;
        if (op == "is-strong-mono") return is_stable_strong_mono(ctx, f).answer;
        if (op == "is-strong-epi") return is_stable_strong_epi(ctx, f).answer;
        if (op == "is-iso") return is_stable_iso(ctx, f).answer;
        throw UnknownReferenceError("unknown decide op '" + op + "'");
    }
    if (fact.check == "loop_is_zero") {
        StableContext ctx = ctx_for("T");
        return loop_suspension(ctx, w.module(fact.args["module"].get<std::string>()), LoopSide::Loop).is_zero();
    }
    if (fact.check == "morphism_nonzero") {
        Morphism c = compose(w.morphism(fact.args["left"].get<std::string>()),
                             w.morphism(fact.args["right"].get<std::string>()));
        return !c.is_zero();
    }
    if (fact.check == "envelope_isomorphic") {
        EnvelopeResult env = envelope(w.module(fact.args["module"].get<std::string>()), EnvelopeSide::Injective);
        return is_isomorphic(env.hull, w.module(fact.args["target"].get<std::string>()));
    }
    if (fact.check == "weak_balance_all_pass") {
        StableContext ctx = ctx_for("T");
        return check_weak_balance_sufficient(ctx).all_pass;
    }
    if (fact.check == "balance_verdict") {
        StableContext ctx = ctx_for("T");
        SearchMode mode = fact.args.value("mode", std::string("balance")) == "weak_balance" ? SearchMode::WeakBalance
                                                                                            : SearchMode::Balance;
        BalanceReport report = search_counterexample(ctx, w.all_modules(), mode, budget, seed);
        switch (report.verdict) {
            case BalanceVerdict::Balanced: return "balanced";
            case BalanceVerdict::NotBalanced: return "not_balanced";
            case BalanceVerdict::Undetermined: return "undetermined";
        }
    }
    if (fact.check == "serre_balance_verdict") {
        SerreClass s = serre_class(w.algebra, w.serre_support(fact.args["support"].get<std::string>()));
        BalanceReport report = check_serre_balance(s, w.all_modules());
        switch (report.verdict) {
            case BalanceVerdict::Balanced: return "balanced";
            case BalanceVerdict::NotBalanced: return "not_balanced";
            case BalanceVerdict::Undetermined: return "undetermined";
        }
    }
    if (fact.check == "serre_torsion_total_dim") {
        SerreClass s = serre_class(w.algebra, w.serre_support(fact.args["support"].get<std::string>()));
        return serre_torsion(w.module(fact.args["module"].get<std::string>()), s).torsion.total_dim();
    }
    if (fact.check == "ext_dim")
        return ext1(w.module(fact.args["from"].get<std::string>()), w.module(fact.args["to"].get<std::string>()))
            .dimension;
    throw UnknownReferenceError("unknown fact check '" + fact.check + "'");
}

}  // namespace stabcat
