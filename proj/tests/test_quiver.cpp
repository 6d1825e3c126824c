#include <catch2/catch_amalgamated.hpp>

#include "cmcat/quiver.hpp"

using namespace cmcat;

namespace {
// arrows written 1-based like the input files; the core API is 0-based
Quiver make(int n, std::vector<std::pair<int, int>> arrows) {
    for (auto& [s, t] : arrows) {
        --s;
        --t;
    }
    return Quiver::from_arrows(n, std::move(arrows));
}
}  // namespace

TEST_CASE("quiver validation") {
    CHECK_THROWS_AS(Quiver::from_arrows(2, {{0, 2}}), ParseError);  // out of range
    CHECK_THROWS_AS(Quiver::from_arrows(2, {{-1, 0}}), ParseError);
    CHECK_THROWS_AS(Quiver::from_arrows(2, {{1, 1}}), ParseError);  // loop
    CHECK_THROWS_AS(Quiver::from_arrows(2, {{0, 1}, {1, 0}}), ParseError);  // cycle
    CHECK_THROWS_AS(Quiver::from_arrows(3, {{0, 1}}), ParseError);  // disconnected
    CHECK_THROWS_AS(Quiver::from_arrows(0, {}), ParseError);
    CHECK_NOTHROW(Quiver::from_arrows(1, {}));
    CHECK_NOTHROW(Quiver::from_arrows(2, {{0, 1}, {0, 1}}));  // parallel arrows
}

TEST_CASE("topological order respects arrows") {
    Quiver q = make(4, {{2, 1}, {3, 2}, {4, 3}});
    auto ord = *q.topological_order();
    std::vector<int> pos(4);
    for (int i = 0; i < 4; ++i) pos[ord[i]] = i;
    for (auto [s, t] : q.arrows) CHECK(pos[s] < pos[t]);
}

TEST_CASE("euler matrix conventions") {
    // arrow 2 -> 1 (internally vertex 1 -> vertex 0)
    Quiver a2 = make(2, {{2, 1}});
    CHECK(a2.euler_matrix() == IMat{{1, 0}, {-1, 1}});
    Quiver kron = make(2, {{1, 2}, {1, 2}});
    CHECK(kron.euler_matrix() == IMat{{1, -2}, {0, 1}});
    Quiver a31 = make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    IMat e = a31.euler_matrix();
    CHECK(e[0][1] == -1);
    CHECK(e[0][3] == -1);
    CHECK(e[1][2] == -1);
    CHECK(e[2][3] == -1);
    for (int i = 0; i < 4; ++i) CHECK(e[i][i] == 1);
}

TEST_CASE("euler form checks lengths") {
    Quiver a2 = make(2, {{2, 1}});
    IMat e = a2.euler_matrix();
    CHECK(euler_form(e, IVec{1, 1}, IVec{0, 1}) == 1);
    CHECK_THROWS_AS(euler_form(e, IVec{1}, IVec{0, 1}), DomainError);
}

TEST_CASE("representation type classification") {
    CHECK(classify_type(make(2, {{2, 1}})).tag == QType::Finite);
    CHECK(classify_type(make(3, {{2, 1}, {3, 2}})).tag == QType::Finite);
    CHECK(classify_type(make(4, {{2, 1}, {3, 2}, {4, 3}})).tag == QType::Finite);
    CHECK(classify_type(make(4, {{2, 1}, {3, 1}, {4, 1}})).tag == QType::Finite);

    auto kron = classify_type(make(2, {{1, 2}, {1, 2}}));
    CHECK(kron.tag == QType::Tame);
    CHECK(kron.null_root == IVec{1, 1});

    auto a31 = classify_type(make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}));
    CHECK(a31.tag == QType::Tame);
    CHECK(a31.null_root == IVec{1, 1, 1, 1});

    auto a22 = classify_type(make(4, {{1, 2}, {3, 2}, {3, 4}, {1, 4}}));
    CHECK(a22.tag == QType::Tame);
    CHECK(a22.null_root == IVec{1, 1, 1, 1});

    auto d4t = classify_type(make(5, {{2, 1}, {3, 1}, {4, 1}, {5, 1}}));
    CHECK(d4t.tag == QType::Tame);
    CHECK(d4t.null_root == IVec{2, 1, 1, 1, 1});

    CHECK(classify_type(make(2, {{1, 2}, {1, 2}, {1, 2}})).tag == QType::Wild);
    CHECK(classify_type(make(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {4, 5}})).tag ==
          QType::Wild);
}

TEST_CASE("coxeter matrix sends projectives to minus injectives") {
    for (auto arrows : {std::vector<std::pair<int, int>>{{2, 1}},
                        {{2, 1}, {3, 2}},
                        {{2, 1}, {3, 1}, {4, 1}},
                        {{1, 2}, {2, 3}, {3, 4}, {1, 4}}}) {
        int n = 0;
        for (auto [s, t] : arrows) n = std::max({n, s, t});
        Quiver q = make(n, arrows);
        IMat e = q.euler_matrix();
        IMat einv = unimodular_inverse(e);
        IMat phi = coxeter_matrix(e);
        IMat phi_inv = coxeter_matrix_inverse(e);
        CHECK(mat_mul(phi, phi_inv) == imat_identity(q.n));
        for (int i = 0; i < q.n; ++i) {
            IVec p = einv[i];
            IVec minus_inj(q.n);
            for (int j = 0; j < q.n; ++j) minus_inj[j] = -einv[j][i];
            CHECK(mat_vec(phi, p) == minus_inj);
        }
    }
}

TEST_CASE("coxeter transform on the two-vertex chain") {
    Quiver a2 = make(2, {{2, 1}});
    IMat phi = coxeter_matrix(a2.euler_matrix());
    CHECK(phi == IMat{{-1, 1}, {-1, 0}});
    // tau of the simple at vertex 2 is the simple at vertex 1
    CHECK(mat_vec(phi, IVec{0, 1}) == IVec{1, 0});
}

TEST_CASE("cycle orientation counts") {
    CHECK(make(2, {{1, 2}, {1, 2}}).cycle_orientation() == std::make_pair(Int(1), Int(1)));
    CHECK(make(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}).cycle_orientation() ==
          std::make_pair(Int(3), Int(1)));
    CHECK(make(4, {{1, 2}, {3, 2}, {3, 4}, {1, 4}}).cycle_orientation() ==
          std::make_pair(Int(2), Int(2)));
    CHECK_FALSE(make(3, {{2, 1}, {3, 2}}).cycle_orientation().has_value());
    CHECK_FALSE(make(4, {{2, 1}, {3, 1}, {4, 1}}).cycle_orientation().has_value());
}

TEST_CASE("virtual quivers from a unipotent euler matrix") {
    IMat e{{1, -2}, {0, 1}};
    Quiver q = Quiver::from_euler(e);
    CHECK(q.n == 2);
    CHECK(q.arrows == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}});
    CHECK(q.euler_matrix() == e);
    CHECK_THROWS_AS(Quiver::from_euler(IMat{{1, 1}, {0, 1}}), InternalError);
    CHECK_THROWS_AS(Quiver::from_euler(IMat{{1, -1}, {-1, 1}}), InternalError);
    // rank zero is the zero algebra
    CHECK(Quiver::from_euler(IMat{}).n == 0);
}
