#include <catch2/catch_amalgamated.hpp>

#include "cmcat/wide.hpp"
#include "oracles.hpp"

using namespace cmcat;

namespace {
Quiver make(int n, std::vector<std::pair<int, int>> arrows) {
    for (auto& [s, t] : arrows) {
        --s;
        --t;
    }
    return Quiver::from_arrows(n, std::move(arrows));
}

const Quiver a2q = make(2, {{2, 1}});
const Quiver a3q = make(3, {{2, 1}, {3, 2}});
const Quiver a31q = make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
}  // namespace

TEST_CASE("full subcategory lists every exceptional root") {
    Algebra a = Algebra::build(a3q);
    Wide w = Wide::full(a);
    CHECK(w.rank() == 3);
    CHECK(w.exceptional_objects() == a.exc_roots);
    CHECK(w.relative_projectives() ==
          std::vector<IVec>{{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
}

TEST_CASE("perpendicular of one projective in the three-chain") {
    Algebra a = Algebra::build(a3q);
    Wide w = Wide::full(a);
    Wide p2perp = perpendicular(w, {IVec{1, 1, 0}});
    CHECK(p2perp.rank() == 2);
    CHECK(p2perp.simples == std::vector<IVec>{{0, 0, 1}, {1, 0, 0}});
    CHECK(p2perp.exceptional_objects() == std::vector<IVec>{{0, 0, 1}, {1, 0, 0}});
    CHECK(p2perp.relative_projectives() == std::vector<IVec>{{0, 0, 1}, {1, 0, 0}});
    // semisimple: no arrows in the local quiver
    CHECK(p2perp.local->q.arrows.empty());

    Wide rank1 = perpendicular(w, {IVec{1, 1, 0}, IVec{1, 1, 1}});
    CHECK(rank1.rank() == 1);
    CHECK(rank1.simples == std::vector<IVec>{{1, 0, 0}});

    // same result through the intermediate subcategory: P3 restricts to S3 there
    CHECK_THROWS_AS(perpendicular(p2perp, {IVec{1, 1, 1}}), DomainError);
    Wide via = perpendicular(p2perp, {IVec{0, 0, 1}});
    CHECK(via == rank1);
}

TEST_CASE("perpendicular with empty argument is the identity") {
    Algebra a = Algebra::build(a2q);
    Wide w = Wide::full(a);
    CHECK(perpendicular(w, {}) == w);
}

TEST_CASE("perpendicular of everything is the zero subcategory") {
    Algebra a = Algebra::build(a2q);
    Wide w = Wide::full(a);
    Wide zero = perpendicular(w, {IVec{1, 0}, IVec{1, 1}});
    CHECK(zero.rank() == 0);
    CHECK(zero.exceptional_objects().empty());
    CHECK(zero.relative_projectives().empty());
    CHECK(zero.key() == "0");
}

TEST_CASE("local hom and ext agree with the ambient algebra") {
    Algebra a = Algebra::build(a3q);
    Wide w = Wide::full(a);
    Wide p3perp = perpendicular(w, {IVec{1, 1, 1}});
    // P3-perp is a two-chain with simples S1, S2
    CHECK(p3perp.simples == std::vector<IVec>{{0, 1, 0}, {1, 0, 0}});
    CHECK(p3perp.exceptional_objects() ==
          std::vector<IVec>{{0, 1, 0}, {1, 0, 0}, {1, 1, 0}});
    for (const IVec& x : p3perp.exceptional_objects())
        for (const IVec& y : p3perp.exceptional_objects()) {
            CHECK(p3perp.hom(x, y) == a.hom(x, y));
            CHECK(p3perp.ext(x, y) == a.ext(x, y));
        }
}

TEST_CASE("perpendiculars are monotone and distinct") {
    Algebra a = Algebra::build(a3q);
    Wide w = Wide::full(a);
    IVec p2{1, 1, 0}, p3{1, 1, 1};
    Wide wp2 = perpendicular(w, {p2});
    Wide wp3 = perpendicular(w, {p3});
    Wide both = perpendicular(w, {p2, p3});
    CHECK(wp2 != wp3);
    auto contains = [](const Wide& big, const Wide& small) {
        for (const IVec& s : small.exceptional_objects()) {
            bool found = false;
            for (const IVec& b : big.exceptional_objects()) found |= (b == s);
            if (!found) return false;
        }
        return true;
    };
    CHECK(contains(wp2, both));
    CHECK(contains(wp3, both));
    CHECK(wp2.rank() == w.rank() - 1);
    CHECK(both.rank() == w.rank() - 2);
}

TEST_CASE("perpendicular rejects bad input") {
    Algebra a = Algebra::build(a3q);
    Wide w = Wide::full(a);
    CHECK_THROWS_AS(perpendicular(w, {IVec{1, 0, 1}}), DomainError);  // not a root
    CHECK_THROWS_AS(perpendicular(w, {IVec{1, 0, 0}, IVec{1, 0, 0}}), DomainError);
}

TEST_CASE("tube report for the tame battery") {
    TubeReport r31 = tube_ranks(Algebra::build(a31q, 6));
    CHECK(r31.ranks == std::vector<Int>{3, 1});
    REQUIRE(r31.witnesses.size() == 1);
    std::vector<IVec> mouth = r31.witnesses[0];
    std::sort(mouth.begin(), mouth.end(), RootLess{});
    CHECK(mouth == std::vector<IVec>{{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}});

    Quiver a22q = make(4, {{1, 2}, {3, 2}, {3, 4}, {1, 4}});
    TubeReport r22 = tube_ranks(Algebra::build(a22q, 6));
    CHECK(r22.ranks == std::vector<Int>{2, 2});
    CHECK(r22.witnesses.size() == 2);

    Quiver kronq = make(2, {{1, 2}, {1, 2}});
    TubeReport rk = tube_ranks(Algebra::build(kronq, 6));
    CHECK(rk.ranks == std::vector<Int>{1, 1});
    CHECK(rk.witnesses.empty());

    CHECK(tube_ranks(Algebra::build(a3q)).ranks.empty());
}

TEST_CASE("perpendicular of a tube mouth in tame type stays tame") {
    Algebra a = Algebra::build(a31q, 8);
    Wide w = Wide::full(a);
    Wide perp = perpendicular(w, {IVec{0, 1, 0, 0}});
    CHECK(perp.rank() == 3);
    CHECK(perp.truncated());  // the local algebra is again tame
    CHECK(perp.local->rtype.tag == QType::Tame);
    // every listed object is orthogonal to the mouth
    for (const IVec& x : perp.exceptional_objects()) {
        CHECK(a.hom(IVec{0, 1, 0, 0}, x) == 0);
        CHECK(a.ext(IVec{0, 1, 0, 0}, x) == 0);
    }
    // and the simples are hom-orthogonal with matching local values
    for (const IVec& s : perp.simples)
        for (const IVec& t : perp.simples) {
            CHECK(perp.hom(s, t) == a.hom(s, t));
            if (s != t) CHECK(a.hom(s, t) == 0);
        }
}

TEST_CASE("perpendicular of a preprojective in tame type is finite") {
    Algebra a = Algebra::build(a31q, 8);
    Wide w = Wide::full(a);
    // P1 has dims (1,1,1,2); its perp must be a rank-3 finite-type category
    Wide perp = perpendicular(w, {a.proj[0]});
    CHECK(perp.rank() == 3);
    CHECK_FALSE(perp.truncated());
    CHECK(perp.local->rtype.tag == QType::Finite);
    // perp of a projective deletes its vertex: simples are the other units
    CHECK(perp.simples ==
          std::vector<IVec>{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}});
}

TEST_CASE("wild input rejected at the subcategory level") {
    Quiver k3 = make(2, {{1, 2}, {1, 2}, {1, 2}});
    Algebra a = Algebra::build(k3);
    CHECK_THROWS_AS(Wide::full(a), DomainError);
}
