#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fpaut/automorphism.hpp"
#include "fpaut/restriction.hpp"
#include "support.hpp"

using namespace fpaut;
using fpaut::testsupport::all_words;
using fpaut::testsupport::random_word;

namespace {

FreeProduct w_n(int n) {
    GroupSpec s;
    s.factors.assign(static_cast<std::size_t>(n), FactorSpec{{2}});
    return FreeProduct(s);
}

AutWord random_autword(const FreeProduct& G, const std::vector<GenAut>& gens,
                       std::mt19937_64& rng, int len) {
    AutWord A;
    for (int k = 0; k < len; ++k)
        A.letters.push_back(AutLetter{gens[rng() % gens.size()], (rng() & 1) ? 1 : -1});
    return A;
}

}  // namespace

TEST_CASE("generator actions") {
    FreeProduct W3 = w_n(3);
    Word x1 = W3.factor_generator(1), x2 = W3.factor_generator(2);

    AutWord empty;
    Word w = W3.multiply(x1, x2);
    CHECK(apply(W3, empty, w) == w);

    AutWord a12 = AutWord::single(make_dehn_twist(W3, 1, 2, x1));
    CHECK(apply(W3, a12, x2) == W3.product(std::vector<Word>{x1, x2, x1}));

    FreeProduct F2(GroupSpec{2, {}});
    AutWord rho21 = AutWord::single(make_right_transvection(F2, 2, 1, F2.free_letter(2)));
    CHECK(apply(F2, rho21, F2.free_letter(1)) ==
          F2.multiply(F2.free_letter(1), F2.free_letter(2)));

    SUBCASE("construction guards") {
        CHECK_THROWS_AS(make_dehn_twist(W3, 1, 1, x1), std::invalid_argument);
        CHECK_THROWS_AS(make_dehn_twist(W3, 2, 1, x1), std::invalid_argument);  // gamma not in factor 2
        CHECK_THROWS_AS(make_reflection(W3, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_permutation(W3, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(make_factor_aut(W3, 1, FactorMatrix{{0}}), std::invalid_argument);
        FreeProduct mixed(GroupSpec{1, {FactorSpec{{2}}}});
        CHECK_THROWS_AS(make_permutation(mixed, 1, 2), std::invalid_argument);
        CHECK_THROWS_AS(make_right_transvection(W3, 1, 2, x1), std::invalid_argument);
    }

    SUBCASE("factor automorphism matrices") {
        FreeProduct G(GroupSpec{0, {FactorSpec{{2}}, FactorSpec{{3}}, FactorSpec{{4}}}});
        CHECK(enumerate_factor_automorphisms(G, 1).size() == 1);
        CHECK(enumerate_factor_automorphisms(G, 2).size() == 2);
        CHECK(enumerate_factor_automorphisms(G, 3).size() == 2);
        AutWord inv2 = AutWord::single(make_factor_aut(G, 2, FactorMatrix{{2}}));
        CHECK(apply(G, inv2, G.factor_generator(2)) == G.factor_element(2, {2}));

        FreeProduct H(GroupSpec{0, {FactorSpec{{2, 2}}, FactorSpec{{2, 2}}}});
        // Aut((Z/2)^2) = GL_2(F_2) has order 6
        CHECK(enumerate_factor_automorphisms(H, 1).size() == 6);
    }
}

TEST_CASE("images and extensional equality") {
    FreeProduct W3 = w_n(3);
    Word x1 = W3.factor_generator(1), x2 = W3.factor_generator(2), x3 = W3.factor_generator(3);

    CHECK(images(W3, AutWord{}) == identity_images(W3));

    AutWord a12 = AutWord::single(make_dehn_twist(W3, 1, 2, x1));
    GeneratorImages I = images(W3, a12);
    CHECK(I.factor_images[0][0] == x1);
    CHECK(I.factor_images[1][0] == W3.product(std::vector<Word>{x1, x2, x1}));
    CHECK(I.factor_images[2][0] == x3);

    AutWord omega = AutWord::single(make_permutation(W3, 1, 2));
    CHECK(equal(W3, compose(omega, omega), AutWord{}));
    CHECK(equal(W3, a12, a12));

    SUBCASE("f(x_i) in Aut(F_4) is an involution with the stated images") {
        FreeProduct F4(GroupSpec{4, {}});
        AutWord f1;
        f1.letters.push_back(AutLetter{make_right_transvection(F4, 1, 4, F4.free_letter(1)), 1});
        f1.letters.push_back(AutLetter{make_left_transvection(F4, 1, 4, F4.free_letter(1)), -1});
        f1.letters.push_back(AutLetter{make_reflection(F4, 1), 1});
        GeneratorImages J = images(F4, f1);
        CHECK(J.free_images[0] == F4.free_letter(1, -1));
        CHECK(J.free_images[1] == F4.free_letter(2));
        CHECK(J.free_images[2] == F4.free_letter(3));
        CHECK(J.free_images[3] == F4.product(std::vector<Word>{
                                      F4.free_letter(1, -1), F4.free_letter(4), F4.free_letter(1)}));
        CHECK(equal(F4, compose(f1, f1), AutWord{}));
    }

    SUBCASE("validating external images") {
        CHECK_THROWS_AS(make_generator_images(W3, {}, {{x1}, {x2}, {}}),
                        std::invalid_argument);
        // x1 x2 has infinite order, cannot be the image of an order-2 generator
        CHECK_THROWS_AS(
            make_generator_images(W3, {}, {{W3.multiply(x1, x2)}, {x2}, {x3}}),
            std::invalid_argument);
        CHECK(make_generator_images(W3, {}, {{x2}, {x1}, {x3}}).factor_images[0][0] == x2);
    }
}

TEST_CASE("inverse and composition") {
    FreeProduct W3 = w_n(3);
    Word x1 = W3.factor_generator(1);

    AutWord a12 = AutWord::single(make_dehn_twist(W3, 1, 2, x1));
    CHECK(equal(W3, compose(a12, inverse(a12)), AutWord{}));

    std::mt19937_64 rng(23);
    std::vector<GenAut> gens = standard_generators(W3);
    for (int trial = 0; trial < 50; ++trial) {
        AutWord A = random_autword(W3, gens, rng, 5);
        CHECK(equal(W3, compose(A, inverse(A)), AutWord{}));
        CHECK(equal(W3, compose(inverse(A), A), AutWord{}));
    }

    SUBCASE("composition/evaluation coherence") {
        FreeProduct G(GroupSpec{1, {FactorSpec{{3}}, FactorSpec{{3}}}});
        std::vector<GenAut> g2 = standard_generators(G);
        std::mt19937_64 rng2(29);
        for (int trial = 0; trial < 60; ++trial) {
            AutWord A = random_autword(G, g2, rng2, static_cast<int>(rng2() % 5));
            AutWord B = random_autword(G, g2, rng2, static_cast<int>(rng2() % 5));
            Word w = random_word(G, rng2, static_cast<int>(rng2() % 5));
            CHECK(apply(G, compose(A, B), w) == apply(G, A, apply(G, B, w)));
        }
    }

    SUBCASE("application is a homomorphism") {
        FreeProduct G(GroupSpec{1, {FactorSpec{{3}}, FactorSpec{{3}}}});
        std::vector<GenAut> g2 = standard_generators(G);
        std::mt19937_64 rng3(59);
        for (int trial = 0; trial < 80; ++trial) {
            AutWord A = random_autword(G, g2, rng3, static_cast<int>(rng3() % 4));
            Word u = random_word(G, rng3, static_cast<int>(rng3() % 5));
            Word v = random_word(G, rng3, static_cast<int>(rng3() % 5));
            CHECK(apply(G, A, G.multiply(u, v)) ==
                  G.multiply(apply(G, A, u), apply(G, A, v)));
            CHECK(apply(G, A, G.invert(u)) == G.invert(apply(G, A, u)));
        }
    }

    SUBCASE("every standard generator is a bijection on short words") {
        FreeProduct W4 = w_n(4);
        for (const GenAut& g : standard_generators(W4)) {
            AutWord A = AutWord::single(g);
            AutWord Ainv = inverse(A);
            for (const Word& w : all_words(W4, 3)) {
                CHECK(apply(W4, Ainv, apply(W4, A, w)) == w);
                CHECK(apply(W4, A, apply(W4, Ainv, w)) == w);
            }
        }
    }
}

TEST_CASE("conjugate images") {
    FreeProduct W3 = w_n(3);
    Word x1 = W3.factor_generator(1), x2 = W3.factor_generator(2);
    GeneratorImages id = identity_images(W3);

    CHECK(conjugate_images(W3, W3.identity(), id) == id);

    Word g = W3.multiply(x1, x2);
    CHECK(conjugate_images(W3, g, id) == images_of_ad(W3, g));
}

TEST_CASE("inner detection") {
    FreeProduct W3 = w_n(3);
    Word x1 = W3.factor_generator(1), x2 = W3.factor_generator(2);

    auto w = find_inner_witness(W3, identity_images(W3));
    REQUIRE(w.has_value());
    CHECK(w->is_identity());

    Word g = W3.multiply(x1, x2);
    auto found = find_inner_witness(W3, images_of_ad(W3, g));
    REQUIRE(found.has_value());
    CHECK(*found == g);  // centre is trivial, so the witness is unique

    AutWord a12 = AutWord::single(make_dehn_twist(W3, 1, 2, x1));
    CHECK_FALSE(find_inner_witness(W3, images(W3, a12)).has_value());

    SUBCASE("round trip for every short g, including the free-pivot path") {
        for (const Word& h : all_words(W3, 3)) {
            auto r = find_inner_witness(W3, images_of_ad(W3, h));
            REQUIRE(r.has_value());
            CHECK(*r == h);
        }
        FreeProduct F2(GroupSpec{2, {}});
        for (const Word& h : all_words(F2, 3, 2)) {
            auto r = find_inner_witness(F2, images_of_ad(F2, h));
            REQUIRE(r.has_value());
            CHECK(*r == h);
        }
    }
}

TEST_CASE("equality modulo inner automorphisms") {
    FreeProduct W3 = w_n(3);
    Word x1 = W3.factor_generator(1);
    AutWord a12 = AutWord::single(make_dehn_twist(W3, 1, 2, x1));

    auto self = equal_mod_inner(W3, a12, a12);
    REQUIRE(self.has_value());
    CHECK(self->is_identity());

    CHECK_FALSE(equal_mod_inner(W3, a12, AutWord{}).has_value());

    // alpha_12 alpha_13 = ad(x1) exactly, hence alpha_12 and alpha_13 agree
    // modulo Inn (alpha_13 is its own inverse)
    AutWord a13 = AutWord::single(make_dehn_twist(W3, 1, 3, x1));
    auto wit = equal_mod_inner(W3, a12, a13);
    REQUIRE(wit.has_value());
    CHECK(*wit == x1);

    SUBCASE("witness filtered through N") {
        SubgroupSpec N = SubgroupSpec::uniform(2);
        // x1 is not in N = G'G^2, so the unique witness is rejected
        CHECK_FALSE(equal_mod_inner_n(W3, a12, a13, N).has_value());
        auto id_wit = equal_mod_inner_n(W3, a12, a12, N);
        REQUIRE(id_wit.has_value());
        CHECK(id_wit->is_identity());
    }
}

TEST_CASE("characteristic subgroup property") {
    FreeProduct W4 = w_n(4);
    SubgroupSpec N = SubgroupSpec::uniform(2);
    std::vector<Word> words = all_words(W4, 3);
    for (const GenAut& s : standard_generators(W4)) {
        AutWord A = AutWord::single(s);
        for (const Word& w : words) {
            if (!W4.in_subgroup(w, N)) continue;
            CHECK(W4.in_subgroup(apply(W4, A, w), N));
        }
    }
}
