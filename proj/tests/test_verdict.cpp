#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cmcat/verdict.hpp"

using namespace cmcat;

namespace {

Quiver make(int n, std::vector<std::pair<int, int>> arrows) {
    std::vector<std::pair<int, int>> zero;
    for (auto [s, t] : arrows) zero.emplace_back(s - 1, t - 1);
    return Quiver::from_arrows(n, zero);
}

Quiver a2() { return make(2, {{2, 1}}); }
Quiver a3() { return make(3, {{2, 1}, {3, 2}}); }
Quiver kronecker() { return make(2, {{1, 2}, {1, 2}}); }
Quiver kronecker3() { return make(2, {{1, 2}, {1, 2}, {1, 2}}); }
Quiver atilde31() { return make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }
Quiver atilde22() { return make(4, {{1, 2}, {2, 3}, {1, 4}, {4, 3}}); }

}  // namespace

TEST_CASE("first-factor condition sweeps clean on finite categories") {
    for (Quiver q : {a2(), a3()}) {
        Algebra alg = Algebra::build(q);
        Cmc ctx(alg);
        Category c = ctx.build_category();
        ConditionReport rep = check_condition_one(ctx, c);
        INFO((rep.violations.empty() ? std::string("ok") : rep.violations[0]));
        CHECK(rep.pass);
        CHECK(rep.sets_checked > 0);
    }
}

TEST_CASE("last-factor condition sweeps clean on finite categories") {
    for (Quiver q : {a2(), a3()}) {
        Algebra alg = Algebra::build(q);
        Cmc ctx(alg);
        Category c = ctx.build_category();
        ConditionReport rep = check_condition_two(ctx, c);
        INFO((rep.violations.empty() ? std::string("ok") : rep.violations[0]));
        CHECK(rep.pass);
        CHECK(rep.sets_checked > 0);
    }
}

TEST_CASE("last-factor sets count matches the compatible-set census") {
    // in rank 2 every realized last-factor set comes from one of the five
    // clusters, their five rank-1 cuts, or the identity targets
    Algebra alg = Algebra::build(a2());
    Cmc ctx(alg);
    Category c = ctx.build_category();
    ConditionReport rep = check_condition_two(ctx, c);
    CHECK(rep.pass);
    // into 0: five singletons (2 per rank-1 source minus overlaps) plus five
    // pairs, one per cluster; into rank-1 targets: five singletons
    CHECK(rep.sets_checked == 16);
}

TEST_CASE("mouth triple fails first-factor recovery") {
    Algebra alg = Algebra::build(atilde31());
    Cmc ctx(alg);
    const auto& mouths = alg.tubes.mouths;
    bool found = false;
    for (const auto& mouth : mouths) {
        if (mouth.size() < 3) continue;
        found = true;
        std::vector<Morph> lasts;
        for (const IVec& x : mouth) {
            Wide wx = Wide::from_simples(alg, {x}, {x});
            lasts.push_back(ctx.morphism(wx, {{x, false}}));
        }
        CHECK_THROWS_AS(ctx.recover_first_factors(lasts, lasts[0].target),
                        DomainError);
    }
    CHECK(found);
}

TEST_CASE("verdict on the finite battery is CAT0 with full scope") {
    for (Quiver q : {a2(), a3()}) {
        Verdict v = verdict(q);
        CHECK(v.status == Verdict::Status::CAT0);
        CHECK(v.scope == "full");
        CHECK(v.type_name == "finite");
        CHECK(v.faithful);
        CHECK(v.cubical.pass);
        CHECK(v.cond1.pass);
        CHECK(v.cond2.pass);
        CHECK(v.exit_code() == 0);
        CHECK(v.witness.empty());
    }
}

TEST_CASE("verdict on small-tube tame input is CAT0 on the slice") {
    for (Quiver q : {kronecker(), atilde22()}) {
        Verdict v = verdict(q);
        CHECK(v.status == Verdict::Status::CAT0);
        CHECK(v.scope == "truncated-slice");
        CHECK(v.type_name == "tame");
        CHECK(v.exit_code() == 0);
        bool ranks_note = false;
        for (const std::string& n : v.notes)
            if (n.find("tube ranks:") != std::string::npos) ranks_note = true;
        CHECK(ranks_note);
    }
}

TEST_CASE("verdict on a big tube is NotCAT0 with a verified witness") {
    Verdict v = verdict(atilde31());
    REQUIRE(v.status == Verdict::Status::NotCAT0);
    CHECK(v.scope == "full");
    CHECK(v.type_name == "tame");
    CHECK(v.exit_code() == 1);
    REQUIRE(v.witness.size() == 3);

    // independent re-verification of the witness triple
    Algebra alg = Algebra::build(atilde31());
    Cmc ctx(alg);
    IVec total(4, 0);
    for (const IVec& x : v.witness) {
        CHECK(alg.is_exceptional(x));
        total = ivec_add(total, x);
    }
    CHECK(total == IVec{1, 1, 1, 1});  // the arcs partition the null root
    for (const IVec& x : v.witness)
        for (const IVec& y : v.witness)
            if (x != y) CHECK(alg.hom(x, y) == 0);
    Arrangement arr = arrange_exceptional_sequence(ctx.full(), v.witness);
    CHECK_FALSE(arr.ok);
    CHECK(arr.cycle.size() == 3);

    bool singular_note = false;
    for (const std::string& n : v.notes)
        if (n.find("recovery is singular") != std::string::npos)
            singular_note = true;
    CHECK(singular_note);
}

TEST_CASE("verdict rejects wild input as unsupported") {
    Verdict v = verdict(kronecker3());
    CHECK(v.status == Verdict::Status::Unsupported);
    CHECK(v.type_name == "wild");
    CHECK(v.exit_code() == 2);
}

TEST_CASE("verdict status is orientation independent") {
    // all acyclic orientations of the A3, A4, and D4 diagrams
    std::vector<std::vector<std::pair<int, int>>> diagrams = {
        {{1, 2}, {2, 3}},
        {{1, 2}, {2, 3}, {3, 4}},
        {{1, 2}, {1, 3}, {1, 4}},
    };
    for (const auto& edges : diagrams) {
        int n = 0;
        for (auto [s, t] : edges) n = std::max({n, s, t});
        for (int mask = 0; mask < (1 << edges.size()); ++mask) {
            std::vector<std::pair<int, int>> arrows;
            for (size_t e = 0; e < edges.size(); ++e)
                arrows.push_back(mask & (1 << e)
                                     ? std::pair{edges[e].second, edges[e].first}
                                     : edges[e]);
            Verdict v = verdict(make(n, arrows));
            INFO("mask " << mask << " on " << n << " vertices");
            CHECK(v.status == Verdict::Status::CAT0);
            CHECK(v.scope == "full");
        }
    }
}

TEST_CASE("verdicts are deterministic") {
    Verdict u = verdict(atilde31());
    Verdict v = verdict(atilde31());
    REQUIRE(u.witness.size() == v.witness.size());
    for (size_t i = 0; i < u.witness.size(); ++i)
        CHECK(u.witness[i] == v.witness[i]);
    CHECK(u.notes == v.notes);
}
