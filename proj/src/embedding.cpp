#include "fpaut/embedding.hpp"

#include <array>
#include <numeric>
#include <stdexcept>

namespace fpaut {

std::pair<long long, long long> bezout(long long r, long long k) {
    if (r < 1) throw std::invalid_argument("exponent must be positive");
    if (std::gcd(r, k) != 1) throw std::invalid_argument("exponent not coprime to n-1");
    if (r == 1) return {0, 1};
    // u = k^{-1} mod r, in [0, r)
    long long a = ((k % r) + r) % r;
    long long t = 0, new_t = 1, rem = r, new_rem = a;
    while (new_rem != 0) {
        long long q = rem / new_rem;
        t = std::exchange(new_t, t - q * new_t);
        rem = std::exchange(new_rem, rem - q * new_rem);
    }
    long long u = ((t % r) + r) % r;
    return {u, (1 - u * k) / r};
}

LiftParams make_lift_params(const FreeProduct& G, const SubgroupSpec& N) {
    G.check_subgroup_spec(N);
    LiftParams P;
    long long k = G.positions() - 1;
    for (int pos = 1; pos <= G.positions(); ++pos)
        P.ut.push_back(bezout(N.exponent_at(pos), k));
    return P;
}

LiftedGenerator corrected_lift(const FreeProduct& G, const GenAut& g,
                               const LiftParams& P) {
    LiftedGenerator L;
    L.base = g;
    switch (g.kind) {
        case GenAut::Kind::FactorAut:
        case GenAut::Kind::Permutation:
        case GenAut::Kind::RightTransvection:
            L.conj = G.identity();
            break;
        case GenAut::Kind::DehnTwist:
            L.conj = G.power(Word{{g.gamma}}, P.u_at(g.i));
            break;
        case GenAut::Kind::LeftTransvection:
            L.conj = G.power(Word{{g.gamma}}, -P.u_at(g.i));
            break;
        case GenAut::Kind::Reflection:
            L.conj = G.free_letter(g.i, P.u_at(g.i));
            break;
    }
    return L;
}

LiftedAut lifted_identity() { return LiftedAut{Word{}, AutWord{}}; }

LiftedAut compose_lifted(const FreeProduct& G, const LiftedAut& L, const LiftedAut& R) {
    // (ad(c) o B)(ad(c') o B') = ad(c . B(c')) o (B o B')
    return LiftedAut{G.multiply(L.conj, apply(G, L.base, R.conj)),
                     compose(L.base, R.base)};
}

LiftedAut inverse_lifted(const FreeProduct& G, const LiftedAut& L) {
    AutWord binv = inverse(L.base);
    return LiftedAut{apply(G, binv, G.invert(L.conj)), std::move(binv)};
}

LiftedAut lift_word(const FreeProduct& G, const AutWord& A, const LiftParams& P) {
    LiftedAut acc = lifted_identity();
    for (const AutLetter& l : A.letters) {
        LiftedGenerator lg = corrected_lift(G, l.gen, P);
        LiftedAut step{lg.conj, AutWord::single(lg.base)};
        if (l.sign < 0) step = inverse_lifted(G, step);
        acc = compose_lifted(G, acc, step);
    }
    return acc;
}

Word apply_lifted(const FreeProduct& G, const LiftedAut& L, const Word& w) {
    return G.conjugate(L.conj, apply(G, L.base, w));
}

GeneratorImages images_lifted(const FreeProduct& G, const LiftedAut& L) {
    return conjugate_images(G, L.conj, images(G, L.base));
}

std::optional<Word> splitting_predicted_conjugator(const FreeProduct& G,
                                                   const RelationInstance& inst,
                                                   const LiftParams& P) {
    auto gamma_word = [&](const AutLetter& l) { return Word{{l.gen.gamma}}; };
    auto u_of = [&](const AutLetter& l) { return P.u_at(l.gen.i); };
    const auto& L = inst.lhs.letters;
    if (inst.family == "4") {
        // alpha_ij alpha_kl vs swapped: ad([gamma_i^u, gamma_k^u])
        Word gi = G.power(gamma_word(L[0]), u_of(L[0]));
        Word gk = G.power(gamma_word(L[1]), u_of(L[1]));
        return G.commutator(gi, gk);
    }
    if (inst.family == "5") {
        // ad([gamma_k^{u-1}, gamma_i^{u}] [gamma_i^{u}, gamma_k^{-u}])
        const AutLetter& lk = L[0];
        const AutLetter& li = L[1];
        long long uk = u_of(lk), ui = u_of(li);
        Word c1 = G.commutator(G.power(gamma_word(lk), uk - 1), G.power(gamma_word(li), ui));
        Word c2 = G.commutator(G.power(gamma_word(li), ui), G.power(gamma_word(lk), -uk));
        return G.multiply(c1, c2);
    }
    if (inst.family == "13") {
        // alpha_ij tau_k: ad([gamma_i^u, a_k^u])
        const AutLetter& li = L[0];
        const AutLetter& lt = L[1];
        return G.commutator(G.power(gamma_word(li), u_of(li)),
                            G.free_letter(lt.gen.i, P.u_at(lt.gen.i)));
    }
    if (inst.family == "19") {
        // rho_ij alpha_jl: ad((a_j gamma_i)^u gamma_i^{-u} a_j^{-u})
        const AutLetter& lr = L[0];
        Word gi = gamma_word(lr);
        Word aj = G.free_letter(lr.gen.j);
        long long u = u_of(lr);
        return G.multiply(G.power(G.multiply(aj, gi), u),
                          G.multiply(G.power(gi, -u), G.power(aj, -u)));
    }
    if (inst.family == "21") {
        // alpha_ji rho_ij: ad(a_j^u (gamma_i a_j)^{-u} gamma_i^u)
        const AutLetter& lr = L[1];
        Word gi = gamma_word(lr);
        Word aj = G.free_letter(lr.gen.j);
        long long u = u_of(lr);
        return G.multiply(G.power(aj, u),
                          G.multiply(G.power(G.multiply(gi, aj), -u), G.power(gi, u)));
    }
    if (inst.family == "0") {
        // relator lifts to ad(gamma^{u(n-1)-1})
        if (!inst.predicted_conjugator) return std::nullopt;
        Word gamma = G.invert(*inst.predicted_conjugator);
        int pos = gamma.syllables[0].pos;
        return G.power(gamma, P.u_at(pos) * (G.positions() - 1) - 1);
    }
    return std::nullopt;
}

SplittingReport verify_splitting(const FreeProduct& G, const SubgroupSpec& N,
                                 const std::vector<RelationInstance>& instances) {
    LiftParams P = make_lift_params(G, N);
    SplittingReport rep;
    for (const RelationInstance& inst : instances) {
        SplittingItem item;
        item.family = inst.family;
        item.params = inst.params;
        LiftedAut lhs = lift_word(G, inst.lhs, P);
        LiftedAut rhs = lift_word(G, inst.rhs, P);
        LiftedAut diff = compose_lifted(G, lhs, inverse_lifted(G, rhs));
        auto w = find_inner_witness(G, images_lifted(G, diff));
        if (w && G.in_subgroup(*w, N)) {
            item.passed = true;
            item.conjugator = w;
        } else {
            item.conjugator = w;
            ++rep.failures;
        }
        if (auto predicted = splitting_predicted_conjugator(G, inst, P)) {
            item.matches_predicted =
                w && images_of_ad(G, *w) == images_of_ad(G, *predicted);
            if (!*item.matches_predicted) ++rep.predicted_mismatches;
        }
        rep.items.push_back(std::move(item));
    }
    return rep;
}

FreeGroupAut embed_generator(const FreeProduct& G, const SubgroupSpec& N,
                             const GenAut& g, const FreeBasis& B,
                             const LiftParams& P) {
    LiftedGenerator lg = corrected_lift(G, g, P);
    LiftedAut L{lg.conj, AutWord::single(lg.base)};
    LiftedAut Linv = inverse_lifted(G, L);

    auto restrict_lifted = [&](const LiftedAut& A) {
        FreeGroupAut f;
        f.m = B.size();
        for (const Word& b : B.words()) {
            Word image = apply_lifted(G, A, b);
            if (!G.in_subgroup(image, N))
                throw std::logic_error("characteristic subgroup invariant broken");
            f.letter_images.push_back(B.rewrite(image));
        }
        return f;
    };
    FreeGroupAut fwd = restrict_lifted(L);
    FreeGroupAut bwd = restrict_lifted(Linv);
    fwd.verified = is_free_identity(compose_free(fwd, bwd)) &&
                   is_free_identity(compose_free(bwd, fwd));
    if (!fwd.verified) throw std::logic_error("lifted generator failed the automorphism certificate");
    return fwd;
}

bool WnReport::all_passed() const {
    if (!rank_ok || !splitting.all_passed()) return false;
    for (const auto& [name, f] : generator_images)
        if (!f.verified) return false;
    return true;
}

WnReport out_wn_report(int n) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (n % 2 != 0)
        throw std::invalid_argument("n-1 even: hypothesis of the corollary fails");
    GroupSpec spec;
    spec.free_rank = 0;
    spec.factors.assign(static_cast<std::size_t>(n), FactorSpec{{2}});
    FreeProduct G(spec);
    SubgroupSpec N = SubgroupSpec::uniform(2);

    WnReport rep;
    rep.n = n;
    rep.expected_rank = (1LL << (n - 1)) * (n - 2) + 1;
    CoverGraph cover(G, N);
    rep.rank = cover_rank(cover);
    rep.rank_ok = rep.rank == rep.expected_rank;

    RelationSuite suite = enumerate_relations(G, N);
    rep.splitting = verify_splitting(G, N, suite.instances);

    FreeBasis basis(cover);
    LiftParams P = make_lift_params(G, N);
    for (const GenAut& g : standard_generators(G))
        rep.generator_images.emplace_back(to_string(G, g), embed_generator(G, N, g, basis, P));
    return rep;
}

namespace {

/// The six permutations of {1,2,3} with words in the transpositions
/// omega_ij of F_4 (a_4 stays fixed).
struct S3Element {
    std::string name;
    std::array<int, 3> map;  // image of 1,2,3
    std::vector<std::pair<int, int>> swaps;
};

std::vector<S3Element> s3_elements() {
    return {
        {"id", {1, 2, 3}, {}},
        {"(12)", {2, 1, 3}, {{1, 2}}},
        {"(13)", {3, 2, 1}, {{1, 3}}},
        {"(23)", {1, 3, 2}, {{2, 3}}},
        {"(123)", {2, 3, 1}, {{1, 2}, {2, 3}}},
        {"(132)", {3, 1, 2}, {{1, 3}, {2, 3}}},
    };
}

}  // namespace

W3Report w3_into_out_f4(int max_len) {
    FreeProduct F4(GroupSpec{4, {}});
    FreeProduct W3(GroupSpec{0, {FactorSpec{{2}}, FactorSpec{{2}}, FactorSpec{{2}}}});

    // f(x_i) = alpha_i4 tau_i with alpha_i4 = rho_i4 lambda_i4^{-1}
    auto fx = [&](int i) {
        AutWord w;
        w.letters.push_back(AutLetter{make_right_transvection(F4, i, 4, F4.free_letter(i)), 1});
        w.letters.push_back(AutLetter{make_left_transvection(F4, i, 4, F4.free_letter(i)), -1});
        w.letters.push_back(AutLetter{make_reflection(F4, i), 1});
        return w;
    };
    auto omega_sigma = [&](const S3Element& s) {
        AutWord w;
        for (auto [a, b] : s.swaps)
            w.letters.push_back(AutLetter{make_permutation(F4, a, b), 1});
        return w;
    };

    W3Report rep;
    GeneratorImages id4 = identity_images(F4);

    rep.squares_ok = true;
    for (int i = 1; i <= 3; ++i) {
        AutWord f = fx(i);
        rep.generator_images.emplace_back(
            "f(x" + std::to_string(i) + ")",
            [&] {
                FreeGroupAut out;
                out.m = 4;
                for (int g = 1; g <= 4; ++g) {
                    Word img = apply(F4, f, F4.free_letter(g));
                    std::vector<int> letters;
                    for (const Syllable& s : img.syllables)
                        for (long long e = 0; e < (s.payload[0] > 0 ? s.payload[0] : -s.payload[0]); ++e)
                            letters.push_back(s.payload[0] > 0 ? s.pos : -s.pos);
                    out.letter_images.push_back(std::move(letters));
                }
                out.verified = true;
                return out;
            }());
        if (!(images(F4, compose(f, f)) == id4)) rep.squares_ok = false;
    }

    rep.equivariance_ok = true;
    for (const S3Element& s : s3_elements()) {
        AutWord ws = omega_sigma(s);
        for (int i = 1; i <= 3; ++i) {
            AutWord lhs = compose(ws, compose(fx(i), inverse(ws)));
            AutWord rhs = fx(s.map[static_cast<std::size_t>(i - 1)]);
            if (!equal(F4, lhs, rhs)) rep.equivariance_ok = false;
        }
    }

    // alpha_12 = alpha_13, alpha_21 = alpha_23, alpha_31 = alpha_32 in Out(W_3)
    rep.out0_relations_ok = true;
    auto tw3 = [&](int i, int j) {
        return AutWord::single(make_dehn_twist(W3, i, j, W3.factor_generator(i)));
    };
    for (int i = 1; i <= 3; ++i) {
        int j = i == 1 ? 2 : 1;
        int k = i == 3 ? 2 : 3;
        if (!equal_mod_inner(W3, tw3(i, j), tw3(i, k))) rep.out0_relations_ok = false;
    }

    // bounded injectivity probe over (w, sigma), w reduced of length <= max_len
    std::vector<Word> words{W3.identity()};
    {
        std::vector<Word> layer{W3.identity()};
        for (int len = 1; len <= max_len; ++len) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (int i = 1; i <= 3; ++i) {
                    if (!w.syllables.empty() && w.syllables.back().pos == i) continue;
                    Word ext = W3.multiply(w, W3.factor_generator(i));
                    next.push_back(ext);
                    words.push_back(ext);
                }
            layer = std::move(next);
        }
    }
    for (const S3Element& s : s3_elements()) {
        AutWord ws = omega_sigma(s);
        for (const Word& w : words) {
            if (w.is_identity() && s.name == "id") continue;
            AutWord f;  // f(w sigma) = f(x_{i_1}) ... f(x_{i_k}) omega_sigma
            for (const Syllable& syl : w.syllables) f = compose(f, fx(syl.pos));
            f = compose(f, ws);
            ++rep.probes_checked;
            if (find_inner_witness(F4, images(F4, f))) ++rep.probe_violations;
        }
    }
    return rep;
}

}  // namespace fpaut
