#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "fpaut/covering.hpp"
#include "support.hpp"

using namespace fpaut;
using fpaut::testsupport::random_word_in;

namespace {

FreeProduct w_n(int n) {
    GroupSpec s;
    s.factors.assign(static_cast<std::size_t>(n), FactorSpec{{2}});
    return FreeProduct(s);
}

FreeProduct pure_free(int d) { return FreeProduct(GroupSpec{d, {}}); }

FreeProduct z_free_z3() { return FreeProduct(GroupSpec{1, {FactorSpec{{3}}}}); }

long long image_order(const FreeProduct& G, const SubgroupSpec& N, int pos) {
    long long o = 1;
    for (long long m : G.factor(pos).invariant_factors) o *= std::gcd(N.exponent_at(pos), m);
    return o;
}

}  // namespace

TEST_CASE("quotient group") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);
    CHECK(QuotientGroup(w_n(2), r2).order() == 4);
    CHECK(QuotientGroup(w_n(4), r2).order() == 16);
    CHECK(QuotientGroup(pure_free(2), SubgroupSpec::uniform(3)).order() == 9);

    QuotientGroup Q(z_free_z3(), SubgroupSpec::uniform(3));
    CHECK(Q.order() == 9);
    FreeProduct G = z_free_z3();
    Word w = G.multiply(G.free_letter(1, 4), G.factor_element(2, {2}));
    CHECK(Q.project(G, w) == std::vector<long long>{1, 2});
    // projection factors through the abelianisation
    Word shuffled = G.product(std::vector<Word>{G.free_letter(1, 2), G.factor_element(2, {1}),
                                                G.free_letter(1, 2), G.factor_element(2, {1})});
    CHECK(Q.project(G, shuffled) == Q.project(G, w));
}

TEST_CASE("cover graph shape") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);

    SUBCASE("vertex and edge counts") {
        for (int n = 2; n <= 6; ++n) {
            FreeProduct G = w_n(n);
            CoverGraph C(G, r2);
            long long q = C.quotient().order();
            long long expected_v = q;
            for (int pos = 1; pos <= n; ++pos) expected_v += q / image_order(G, r2, pos);
            CHECK(static_cast<long long>(C.vertices().size()) == expected_v);
            CHECK(static_cast<long long>(C.edges().size()) == n * q);
        }
        FreeProduct G = z_free_z3();
        CoverGraph C(G, SubgroupSpec::uniform(3));
        CHECK(C.edges().size() == 18);
        CHECK(C.vertices().size() == 12);
    }

    SUBCASE("W2 cover is a single cycle (the subdivided square of the deck picture)") {
        CoverGraph C(w_n(2), r2);
        CHECK(C.vertices().size() == 8);
        CHECK(C.edges().size() == 8);
        // connected and every vertex has degree 2
        std::vector<int> degree(C.vertices().size(), 0);
        for (const CoverEdge& e : C.edges()) {
            ++degree[static_cast<std::size_t>(e.src)];
            ++degree[static_cast<std::size_t>(e.dst)];
        }
        for (int d : degree) CHECK(d == 2);
        CHECK(cover_rank(C) == 1);
    }

    SUBCASE("W3 example counts") {
        CoverGraph C(w_n(3), r2);
        CHECK(C.edges().size() == 24);
        CHECK(C.vertices().size() == 20);
        CHECK(cover_rank(C) == 5);
    }

    SUBCASE("maximal abelian covers: hub fibre plus one fibre per factor") {
        // Z/2 * Z/3 with N = G': 6 hub vertices, fibres of sizes 3 and 2
        FreeProduct G1(GroupSpec{0, {FactorSpec{{2}}, FactorSpec{{3}}}});
        CoverGraph C1(G1, SubgroupSpec::per_factor({2, 3}));
        CHECK(C1.vertices().size() == 11);
        CHECK(C1.edges().size() == 12);
        CHECK(cover_rank(C1) == 2);

        // Z/2 * Z/3 * Z/4 with N = G': 24 + 12 + 8 + 6 vertices, 72 edges
        FreeProduct G2(GroupSpec{0, {FactorSpec{{2}}, FactorSpec{{3}}, FactorSpec{{4}}}});
        CoverGraph C2(G2, SubgroupSpec::per_factor({2, 3, 4}));
        CHECK(C2.vertices().size() == 50);
        CHECK(C2.edges().size() == 72);
        CHECK(cover_rank(C2) == 23);
    }
}

TEST_CASE("freeness and contractibility") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);
    for (int n = 2; n <= 6; ++n) CHECK(is_free_cover(w_n(n), r2));
    CHECK_FALSE(is_free_cover(FreeProduct(GroupSpec{0, {FactorSpec{{4}}, FactorSpec{{4}}}}), r2));
    CHECK(is_free_cover(pure_free(3), SubgroupSpec::uniform(5)));

    CHECK_FALSE(is_contractible_cover(w_n(2), r2));
    CHECK_FALSE(is_contractible_cover(w_n(3), r2));
    CHECK(is_contractible_cover(FreeProduct(GroupSpec{0, {FactorSpec{{2}}}}), r2));

    // a tree quotient with vertex labels is still not contractible: N fixes
    // no vertex of the tree as soon as there are two factors
    FreeProduct G(GroupSpec{0, {FactorSpec{{3}}, FactorSpec{{2}}}});
    CoverGraph C(G, r2);
    CHECK(static_cast<long long>(C.edges().size()) -
              static_cast<long long>(C.vertices().size()) + 1 ==
          0);
    CHECK_FALSE(is_contractible_cover(G, r2));
    CHECK_FALSE(is_free_cover(G, r2));
}

TEST_CASE("rank formulas") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);
    CHECK(cover_rank(CoverGraph(w_n(4), r2)) == 17);
    CHECK(cover_rank(CoverGraph(pure_free(2), SubgroupSpec::uniform(3))) == 10);
    CHECK(cover_rank(CoverGraph(pure_free(3), SubgroupSpec::uniform(3))) == 55);
    CHECK(cover_rank(CoverGraph(z_free_z3(), SubgroupSpec::uniform(3))) == 7);

    CHECK_THROWS_AS(
        cover_rank(CoverGraph(FreeProduct(GroupSpec{0, {FactorSpec{{4}}, FactorSpec{{4}}}}), r2)),
        std::domain_error);
}

TEST_CASE("free basis") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);

    SUBCASE("W2: one basis element, conjugate to (ab)^2") {
        FreeProduct W2 = w_n(2);
        FreeBasis B{CoverGraph(W2, r2)};
        REQUIRE(B.size() == 1);
        Word abab = W2.power(W2.multiply(W2.factor_generator(1), W2.factor_generator(2)), 2);
        bool conj_to = W2.solve_conjugator(B.words()[0], abab).has_value() ||
                       W2.solve_conjugator(B.words()[0], W2.invert(abab)).has_value();
        CHECK(conj_to);
    }

    SUBCASE("basis words live in N and match the rank") {
        for (const FreeProduct& G : {w_n(3), w_n(4), z_free_z3()}) {
            SubgroupSpec N = G.free_rank() > 0 ? SubgroupSpec::uniform(3) : r2;
            CoverGraph C(G, N);
            FreeBasis B(C);
            CHECK(static_cast<long long>(B.size()) == cover_rank(C));
            for (const Word& b : B.words()) {
                CHECK(!b.is_identity());
                CHECK(G.in_subgroup(b, N));
            }
        }
    }

    SUBCASE("non-free covers are rejected") {
        FreeProduct G(GroupSpec{0, {FactorSpec{{4}}, FactorSpec{{4}}}});
        CHECK_THROWS_AS(FreeBasis{CoverGraph(G, r2)}, std::domain_error);
    }
}

TEST_CASE("rewriting") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);
    FreeProduct W2 = w_n(2);
    FreeBasis B{CoverGraph(W2, r2)};

    CHECK(B.rewrite(W2.identity()).empty());

    SUBCASE("basis words rewrite to single letters") {
        for (const FreeProduct& G : {w_n(3), z_free_z3()}) {
            SubgroupSpec N = G.free_rank() > 0 ? SubgroupSpec::uniform(3) : r2;
            FreeBasis Bg{CoverGraph(G, N)};
            for (std::size_t k = 0; k < Bg.size(); ++k)
                CHECK(Bg.rewrite(Bg.words()[k]) == std::vector<int>{static_cast<int>(k) + 1});
        }
    }

    SUBCASE("(ab)^2 rewrites to the single basis letter") {
        Word abab = W2.power(W2.multiply(W2.factor_generator(1), W2.factor_generator(2)), 2);
        std::vector<int> letters = B.rewrite(abab);
        REQUIRE(letters.size() == 1);
        CHECK((letters[0] == 1 || letters[0] == -1));
        CHECK(B.evaluate(letters) == abab);
    }

    SUBCASE("membership is enforced") {
        CHECK_THROWS_AS(B.rewrite(W2.factor_generator(1)), std::invalid_argument);
    }

    SUBCASE("round trips over W4 and Z * Z/3") {
        std::mt19937_64 rng(31);
        for (const FreeProduct& G : {w_n(4), z_free_z3()}) {
            SubgroupSpec N = G.free_rank() > 0 ? SubgroupSpec::uniform(3) : r2;
            FreeBasis Bg{CoverGraph(G, N)};
            for (int trial = 0; trial < 300; ++trial) {
                Word w = random_word_in(G, N, rng, 8);
                CHECK(Bg.evaluate(Bg.rewrite(w)) == w);
            }
        }
    }
}

TEST_CASE("deck action") {
    SubgroupSpec r2 = SubgroupSpec::uniform(2);

    SUBCASE("identity acts trivially") {
        CoverGraph C(w_n(3), r2);
        DeckAction a = deck_action(C, C.quotient().zero());
        for (std::size_t v = 0; v < C.vertices().size(); ++v)
            CHECK(a.vertex_map[v] == static_cast<int>(v));
        for (std::size_t e = 0; e < C.edges().size(); ++e)
            CHECK(a.edge_map[e] == static_cast<int>(e));
    }

    SUBCASE("group action laws, exhaustive up to |Q| = 16") {
        for (const FreeProduct& G : {w_n(2), w_n(3), w_n(4)}) {
            CoverGraph C(G, r2);
            const QuotientGroup& Q = C.quotient();
            std::vector<DeckAction> acts;
            for (long long r = 0; r < Q.order(); ++r)
                acts.push_back(deck_action(C, Q.element_at(r)));
            for (long long r1 = 0; r1 < Q.order(); ++r1)
                for (long long r2i = 0; r2i < Q.order(); ++r2i) {
                    DeckAction sum =
                        deck_action(C, Q.add(Q.element_at(r1), Q.element_at(r2i)));
                    for (std::size_t v = 0; v < C.vertices().size(); ++v)
                        CHECK(sum.vertex_map[v] ==
                              acts[static_cast<std::size_t>(r1)]
                                  .vertex_map[static_cast<std::size_t>(
                                      acts[static_cast<std::size_t>(r2i)].vertex_map[v])]);
                }
        }
    }

    SUBCASE("simply transitive on the hub fibre") {
        CoverGraph C(w_n(4), r2);
        const QuotientGroup& Q = C.quotient();
        std::set<int> orbit;
        for (long long r = 0; r < Q.order(); ++r) {
            DeckAction a = deck_action(C, Q.element_at(r));
            int image = a.vertex_map[static_cast<std::size_t>(C.base_vertex())];
            CHECK(C.vertices()[static_cast<std::size_t>(image)].kind == 0);
            orbit.insert(image);
            if (r != 0) CHECK(image != C.base_vertex());  // stabiliser is trivial
        }
        CHECK(orbit.size() == static_cast<std::size_t>(Q.order()));
    }

    SUBCASE("W2 generators act as the two reflections of the cycle") {
        FreeProduct W2 = w_n(2);
        CoverGraph C(W2, r2);
        const QuotientGroup& Q = C.quotient();
        for (int pos = 1; pos <= 2; ++pos) {
            DeckAction a = deck_action(C, Q.project(W2, W2.factor_generator(pos)));
            int fixed = 0;
            bool involution = true;
            for (std::size_t v = 0; v < C.vertices().size(); ++v) {
                if (a.vertex_map[v] == static_cast<int>(v)) ++fixed;
                involution =
                    involution &&
                    a.vertex_map[static_cast<std::size_t>(a.vertex_map[v])] == static_cast<int>(v);
            }
            CHECK(involution);
            CHECK(fixed == 2);  // exactly the two vertices of its own factor fibre
        }
    }
}
