#include "fpaut/relations.hpp"

#include <sstream>

namespace fpaut {

namespace {

/// Elements gamma ranging over factor i: exhaustive for finite factors,
/// the sampled exponents of a_i for free letters.
std::vector<Word> gamma_choices(const FreeProduct& G, int i, const Sampling& s) {
    if (G.is_free_position(i)) {
        std::vector<Word> out;
        for (long long e : s.free_exponents)
            if (e != 0) out.push_back(G.free_letter(i, e));
        return out;
    }
    return G.factor_nontrivial_elements(i);
}

/// Nonidentity automorphisms of the finite factor at pos.
std::vector<FactorMatrix> nontrivial_factor_auts(const FreeProduct& G, int pos) {
    auto all = enumerate_factor_automorphisms(G, pos);
    return {all.begin() + 1, all.end()};  // identity is listed first
}

FactorMatrix identity_matrix(std::size_t k) {
    FactorMatrix M(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i) M[i][i] = 1;
    return M;
}

/// Valid permutation pairs i < j: identical finite factors or two free
/// letters.
std::vector<std::pair<int, int>> permutation_pairs(const FreeProduct& G) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= G.positions(); ++i)
        for (int j = i + 1; j <= G.positions(); ++j) {
            bool fi = G.is_free_position(i), fj = G.is_free_position(j);
            if (fi && fj) out.emplace_back(i, j);
            else if (!fi && !fj && G.factor(i) == G.factor(j)) out.emplace_back(i, j);
        }
    return out;
}

/// The same element transported along the canonical identification
/// omega_bar: coordinates are kept, only the position changes.
Word transport(const Word& gamma, int to_pos) {
    Word g = gamma;
    g.syllables[0].pos = to_pos;
    return g;
}

Word matrix_image(const FreeProduct& G, const FactorMatrix& M, const Word& gamma) {
    const Syllable& s = gamma.syllables[0];
    AutWord phi = AutWord::single(make_factor_aut(G, s.pos, M));
    return apply(G, phi, gamma);
}

struct Builder {
    const FreeProduct& G;
    const Sampling& sampling;
    std::vector<RelationInstance> out;

    int d() const { return G.free_rank(); }
    int n() const { return G.positions(); }

    AutWord tw(int i, int j, const Word& g, int sign = 1) {
        return AutWord::single(make_dehn_twist(G, i, j, g), sign);
    }
    AutWord rho(int i, int j, const Word& g, int sign = 1) {
        return AutWord::single(make_right_transvection(G, i, j, g), sign);
    }
    AutWord lam(int i, int j, const Word& g, int sign = 1) {
        return AutWord::single(make_left_transvection(G, i, j, g), sign);
    }
    AutWord tau(int i) { return AutWord::single(make_reflection(G, i)); }
    AutWord omega(int i, int j) { return AutWord::single(make_permutation(G, i, j)); }
    AutWord phi(int i, const FactorMatrix& M) {
        return AutWord::single(make_factor_aut(G, i, M));
    }

    void emit(const std::string& family, std::string params, AutWord lhs, AutWord rhs,
              RelationLevel level = RelationLevel::Exact,
              std::optional<Word> predicted = std::nullopt) {
        out.push_back(RelationInstance{family, std::move(params), std::move(lhs),
                                       std::move(rhs), level, std::move(predicted)});
    }

    std::string desc(std::initializer_list<std::pair<const char*, int>> idx,
                     std::initializer_list<std::pair<const char*, const Word*>> elts = {}) {
        std::ostringstream os;
        bool first = true;
        for (auto& [k, v] : idx) {
            if (!first) os << ' ';
            first = false;
            os << k << '=' << v;
        }
        for (auto& [k, w] : elts) {
            if (!first) os << ' ';
            first = false;
            os << k << '=' << G.to_string(*w);
        }
        return os.str();
    }

    void family1() {
        for (int i = d() + 1; i <= n(); ++i)
            for (int j = i + 1; j <= n(); ++j)
                for (const auto& Mi : nontrivial_factor_auts(G, i))
                    for (const auto& Mj : nontrivial_factor_auts(G, j))
                        emit("1", desc({{"i", i}, {"j", j}}),
                             compose(phi(i, Mi), phi(j, Mj)),
                             compose(phi(j, Mj), phi(i, Mi)));
    }

    void family2() {
        for (int i = d() + 1; i <= n(); ++i)
            for (const auto& M : nontrivial_factor_auts(G, i))
                for (int k = d() + 1; k <= n(); ++k)
                    for (int j = 1; j <= n(); ++j) {
                        if (j == k || j == i) continue;
                        for (const Word& g : gamma_choices(G, j, sampling))
                            emit("2", desc({{"i", i}, {"j", j}, {"k", k}}, {{"gamma", &g}}),
                                 compose(phi(i, M), tw(j, k, g)),
                                 compose(tw(j, k, g), phi(i, M)));
                    }
    }

    void family3() {
        for (int i = d() + 1; i <= n(); ++i)
            for (const auto& M : nontrivial_factor_auts(G, i))
                for (int k = d() + 1; k <= n(); ++k) {
                    if (k == i) continue;
                    for (const Word& g : gamma_choices(G, i, sampling))
                        emit("3", desc({{"i", i}, {"k", k}}, {{"gamma", &g}}),
                             compose(phi(i, M), tw(i, k, g)),
                             compose(tw(i, k, matrix_image(G, M, g)), phi(i, M)));
                }
    }

    void family4() {
        // Pairwise-distinct index tuples; the degenerate i = k instances are
        // commutations inside one factor and are left to family (2)/(3).
        for (int i = 1; i <= n(); ++i)
            for (int j = d() + 1; j <= n(); ++j)
                for (int k = 1; k <= n(); ++k)
                    for (int l = d() + 1; l <= n(); ++l) {
                        if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
                        for (const Word& gi : gamma_choices(G, i, sampling))
                            for (const Word& gk : gamma_choices(G, k, sampling))
                                emit("4",
                                     desc({{"i", i}, {"j", j}, {"k", k}, {"l", l}},
                                          {{"gamma_i", &gi}, {"gamma_k", &gk}}),
                                     compose(tw(i, j, gi), tw(k, l, gk)),
                                     compose(tw(k, l, gk), tw(i, j, gi)));
                    }
    }

    void family5() {
        for (int i = d() + 1; i <= n(); ++i)
            for (int j = d() + 1; j <= n(); ++j)
                for (int k = 1; k <= n(); ++k) {
                    if (i == j || k == i || k == j) continue;
                    for (const Word& gi : gamma_choices(G, i, sampling))
                        for (const Word& gk : gamma_choices(G, k, sampling))
                            emit("5",
                                 desc({{"i", i}, {"j", j}, {"k", k}},
                                      {{"gamma_i", &gi}, {"gamma_k", &gk}}),
                                 compose(tw(k, i, gk), compose(tw(i, j, gi), tw(k, i, gk, -1))),
                                 compose(tw(k, j, gk, -1), compose(tw(i, j, gi), tw(k, j, gk))));
                }
    }

    void family6() {
        for (auto [i, j] : permutation_pairs(G)) {
            if (G.is_free_position(i)) continue;
            for (const auto& M : nontrivial_factor_auts(G, i)) {
                // canonical identification: phi_j carries the same matrix
                emit("6", desc({{"i", i}, {"j", j}}), compose(omega(i, j), phi(i, M)),
                     compose(phi(j, M), omega(i, j)));
                emit("6", desc({{"i", j}, {"j", i}}), compose(omega(i, j), phi(j, M)),
                     compose(phi(i, M), omega(i, j)));
            }
        }
    }

    void family7() {
        for (auto [i, j] : permutation_pairs(G))
            for (int k = d() + 1; k <= n(); ++k) {
                if (k == i || k == j) continue;
                for (const auto& M : nontrivial_factor_auts(G, k))
                    emit("7", desc({{"i", i}, {"j", j}, {"k", k}}),
                         compose(omega(i, j), phi(k, M)), compose(phi(k, M), omega(i, j)));
            }
    }

    void family8() {
        for (auto [i, j] : permutation_pairs(G)) {
            if (G.is_free_position(i)) continue;
            for (const Word& g : gamma_choices(G, i, sampling))
                emit("8", desc({{"i", i}, {"j", j}}, {{"gamma", &g}}),
                     compose(omega(i, j), tw(i, j, g)),
                     compose(tw(j, i, transport(g, j)), omega(i, j)));
            for (const Word& g : gamma_choices(G, j, sampling))
                emit("8", desc({{"i", j}, {"j", i}}, {{"gamma", &g}}),
                     compose(omega(i, j), tw(j, i, g)),
                     compose(tw(i, j, transport(g, i)), omega(i, j)));
        }
    }

    void family9() {
        for (auto [i, j] : permutation_pairs(G))
            for (int k = d() + 1; k <= n(); ++k) {
                if (k == i || k == j) continue;
                for (const Word& g : gamma_choices(G, i, sampling))
                    emit("9", desc({{"i", i}, {"j", j}, {"k", k}}, {{"gamma", &g}}),
                         compose(omega(i, j), tw(i, k, g)),
                         compose(tw(j, k, transport(g, j)), omega(i, j)));
                for (const Word& g : gamma_choices(G, j, sampling))
                    emit("9", desc({{"i", j}, {"j", i}, {"k", k}}, {{"gamma", &g}}),
                         compose(omega(i, j), tw(j, k, g)),
                         compose(tw(i, k, transport(g, i)), omega(i, j)));
            }
    }

    void family10() {
        for (auto [i, j] : permutation_pairs(G)) {
            if (G.is_free_position(i)) continue;
            for (int k = 1; k <= n(); ++k) {
                if (k == i || k == j) continue;
                for (const Word& g : gamma_choices(G, k, sampling)) {
                    emit("10", desc({{"i", i}, {"j", j}, {"k", k}}, {{"gamma", &g}}),
                         compose(omega(i, j), tw(k, i, g)),
                         compose(tw(k, j, g), omega(i, j)));
                    emit("10", desc({{"i", j}, {"j", i}, {"k", k}}, {{"gamma", &g}}),
                         compose(omega(i, j), tw(k, j, g)),
                         compose(tw(k, i, g), omega(i, j)));
                }
            }
        }
    }

    void family11() {
        for (auto [i, j] : permutation_pairs(G))
            for (int k = 1; k <= n(); ++k)
                for (int l = d() + 1; l <= n(); ++l) {
                    if (k == l || k == i || k == j || l == i || l == j) continue;
                    for (const Word& g : gamma_choices(G, k, sampling))
                        emit("11", desc({{"i", i}, {"j", j}, {"k", k}, {"l", l}},
                                        {{"gamma", &g}}),
                             compose(omega(i, j), tw(k, l, g)),
                             compose(tw(k, l, g), omega(i, j)));
                }
    }

    void family13() {
        for (int i = 1; i <= n(); ++i)
            for (int j = d() + 1; j <= n(); ++j) {
                if (i == j) continue;
                for (int k = 1; k <= d(); ++k) {
                    if (k == i) continue;
                    for (const Word& g : gamma_choices(G, i, sampling))
                        emit("13", desc({{"i", i}, {"j", j}, {"k", k}}, {{"gamma", &g}}),
                             compose(tw(i, j, g), tau(k)), compose(tau(k), tw(i, j, g)));
                }
            }
    }

    void family14() {
        for (int i = 1; i <= d(); ++i)
            for (int j = d() + 1; j <= n(); ++j) {
                Word ai = G.free_letter(i);
                emit("14", desc({{"i", i}, {"j", j}}), compose(tw(i, j, ai), tau(i)),
                     compose(tau(i), tw(i, j, ai, -1)));
            }
    }

    void family15() {
        for (int j = 1; j <= d(); ++j)
            for (int i = 1; i <= n(); ++i) {
                if (i == j) continue;
                for (const Word& g : gamma_choices(G, i, sampling)) {
                    for (int k = d() + 1; k <= n(); ++k) {
                        if (k == i) continue;
                        for (const auto& M : nontrivial_factor_auts(G, k))
                            emit("15", desc({{"i", i}, {"j", j}, {"k", k}}, {{"gamma", &g}}),
                                 compose(rho(i, j, g), phi(k, M)),
                                 compose(phi(k, M), rho(i, j, g)));
                    }
                    for (int k = 1; k <= d(); ++k) {
                        if (k == i || k == j) continue;
                        emit("15", desc({{"i", i}, {"j", j}, {"k", k}}, {{"gamma", &g}}),
                             compose(rho(i, j, g), tau(k)), compose(tau(k), rho(i, j, g)));
                    }
                }
            }
    }

    void family16() {
        for (int j = 1; j <= d(); ++j) {
            for (int i = d() + 1; i <= n(); ++i)
                for (const auto& M : nontrivial_factor_auts(G, i))
                    for (const Word& g : gamma_choices(G, i, sampling))
                        emit("16", desc({{"i", i}, {"j", j}}, {{"gamma", &g}}),
                             compose(rho(i, j, matrix_image(G, M, g)), phi(i, M)),
                             compose(phi(i, M), rho(i, j, g)));
            for (int i = 1; i <= d(); ++i) {
                if (i == j) continue;
                for (const Word& g : gamma_choices(G, i, sampling))
                    emit("16", desc({{"i", i}, {"j", j}}, {{"gamma", &g}}),
                         compose(rho(i, j, G.invert(g)), tau(i)),
                         compose(tau(i), rho(i, j, g)));
            }
        }
    }

    void family17() {
        for (int j = 1; j <= d(); ++j)
            for (int i = 1; i <= n(); ++i)
                for (int k = 1; k <= n(); ++k)
                    for (int l = d() + 1; l <= n(); ++l) {
                        if (i == j || k == l) continue;
                        if (i == k || i == l || j == k) continue;  // j != l automatic
                        for (const Word& gi : gamma_choices(G, i, sampling))
                            for (const Word& gk : gamma_choices(G, k, sampling))
                                emit("17",
                                     desc({{"i", i}, {"j", j}, {"k", k}, {"l", l}},
                                          {{"gamma_i", &gi}, {"gamma_k", &gk}}),
                                     compose(rho(i, j, gi), tw(k, l, gk)),
                                     compose(tw(k, l, gk), rho(i, j, gi)));
                    }
    }

    void family18() {
        for (int j = 1; j <= d(); ++j)
            for (int i = 1; i <= n(); ++i)
                for (int l = d() + 1; l <= n(); ++l) {
                    if (i == j || i == l) continue;
                    for (const Word& g : gamma_choices(G, i, sampling))
                        emit("18", desc({{"i", i}, {"j", j}, {"l", l}}, {{"gamma", &g}}),
                             compose(rho(i, j, g), tw(i, l, g)),
                             compose(tw(i, l, g), rho(i, j, g)));
                }
    }

    void family19() {
        for (int j = 1; j <= d(); ++j)
            for (int l = d() + 1; l <= n(); ++l)
                for (int i = 1; i <= n(); ++i) {
                    if (i == j || i == l) continue;
                    Word aj = G.free_letter(j);
                    for (const Word& g : gamma_choices(G, i, sampling))
                        emit("19", desc({{"i", i}, {"j", j}, {"l", l}}, {{"gamma", &g}}),
                             compose(rho(i, j, g), tw(j, l, aj)),
                             compose(tw(j, l, aj), compose(rho(i, j, g), tw(i, l, g))));
                }
    }

    void family20() {
        for (int j = 1; j <= d(); ++j)
            for (int i = d() + 1; i <= n(); ++i)
                for (int k = 1; k <= n(); ++k) {
                    if (k == i || k == j) continue;
                    for (const Word& gi : gamma_choices(G, i, sampling))
                        for (const Word& gk : gamma_choices(G, k, sampling))
                            emit("20",
                                 desc({{"i", i}, {"j", j}, {"k", k}},
                                      {{"gamma_i", &gi}, {"gamma_k", &gk}}),
                                 compose(rho(k, j, gk, -1),
                                         compose(rho(i, j, gi),
                                                 compose(rho(k, j, gk), tw(k, i, gk)))),
                                 compose(tw(k, i, gk), rho(i, j, gi)));
                }
    }

    void family21() {
        for (int j = 1; j <= d(); ++j)
            for (int i = d() + 1; i <= n(); ++i) {
                Word aj = G.free_letter(j);
                FactorMatrix id = identity_matrix(G.factor(i).num_generators());
                for (const Word& g : gamma_choices(G, i, sampling))
                    // phi_i restricted to the abelian G_i is ad(gamma^{-1}) = id
                    emit("21", desc({{"i", i}, {"j", j}}, {{"gamma", &g}}),
                         compose(tw(j, i, aj), rho(i, j, g)),
                         compose(lam(i, j, g), compose(tw(j, i, aj), phi(i, id))));
            }
    }

    void family22() {
        for (int k = 1; k <= d(); ++k)
            for (int i = d() + 1; i <= n(); ++i)
                for (const auto& M : nontrivial_factor_auts(G, i))
                    emit("22", desc({{"i", i}, {"k", k}}), compose(tau(k), phi(i, M)),
                         compose(phi(i, M), tau(k)));
    }

    void family23() {
        for (int i = 1; i <= d(); ++i)
            for (auto [k, l] : permutation_pairs(G)) {
                if (i == k || i == l) continue;
                emit("23", desc({{"i", i}, {"k", k}, {"l", l}}),
                     compose(tau(i), omega(k, l)), compose(omega(k, l), tau(i)));
            }
    }

    void family0() {
        for (int i = 1; i <= n(); ++i)
            for (const Word& g : gamma_choices(G, i, sampling)) {
                AutWord relator;
                if (!G.is_free_position(i)) {
                    // phi_i with phi_i|G_i = ad(gamma^{-1}), the identity on
                    // an abelian factor
                    relator = phi(i, identity_matrix(G.factor(i).num_generators()));
                }
                for (int j = 1; j <= d(); ++j) {
                    if (j == i) continue;
                    relator = compose(relator, compose(rho(i, j, g), lam(i, j, g, -1)));
                }
                for (int j = d() + 1; j <= n(); ++j) {
                    if (j == i) continue;
                    relator = compose(relator, tw(i, j, g));
                }
                emit("0", desc({{"i", i}}, {{"gamma", &g}}), std::move(relator), AutWord{},
                     RelationLevel::ModInn, G.invert(g));
            }
    }
};

}  // namespace

std::vector<RelationInstance> nielsen_relation_suite(const FreeProduct& G,
                                                     const Sampling& sampling) {
    Builder b{G, sampling, {}};
    int d = G.free_rank();
    if (d < 2) return {};
    auto A = [&](int i) { return G.free_letter(i); };
    for (int i = 1; i <= d; ++i)
        b.emit("12", b.desc({{"tau^2, i", i}}), compose(b.tau(i), b.tau(i)), AutWord{});
    for (int i = 1; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            b.emit("12", b.desc({{"tau tau, i", i}, {"j", j}}),
                   compose(b.tau(i), b.tau(j)), compose(b.tau(j), b.tau(i)));
            b.emit("12", b.desc({{"omega^2, i", i}, {"j", j}}),
                   compose(b.omega(i, j), b.omega(i, j)), AutWord{});
        }
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            if (i == j) continue;
            b.emit("12", b.desc({{"omega tau, i", i}, {"j", j}}),
                   compose(b.omega(i, j), b.tau(i)), compose(b.tau(j), b.omega(i, j)));
            // tau_j rho_ij tau_j = lambda_ij^{-1},  tau_i rho_ij tau_i = rho_ij^{-1}
            b.emit("12", b.desc({{"tau_j rho tau_j, i", i}, {"j", j}}),
                   compose(b.tau(j), compose(b.rho(i, j, A(i)), b.tau(j))),
                   b.lam(i, j, A(i), -1));
            b.emit("12", b.desc({{"tau_i rho tau_i, i", i}, {"j", j}}),
                   compose(b.tau(i), compose(b.rho(i, j, A(i)), b.tau(i))),
                   b.rho(i, j, A(i), -1));
            // omega_ij rho_ij omega_ij = rho_ji
            b.emit("12", b.desc({{"omega rho omega, i", i}, {"j", j}}),
                   compose(b.omega(i, j), compose(b.rho(i, j, A(i)), b.omega(i, j))),
                   b.rho(j, i, A(j)));
            // rho and lambda into the same letter commute
            b.emit("12", b.desc({{"rho lambda, i", i}, {"j", j}}),
                   compose(b.rho(i, j, A(i)), b.lam(i, j, A(i))),
                   compose(b.lam(i, j, A(i)), b.rho(i, j, A(i))));
        }
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            for (int k = 1; k <= d; ++k) {
                if (i == j || j == k || i == k) continue;
                // [lambda_ij, rho_jk] = rho_ik
                b.emit("12", b.desc({{"[lambda,rho], i", i}, {"j", j}, {"k", k}}),
                       compose(compose(b.lam(i, j, A(i)), b.rho(j, k, A(j))),
                               compose(b.lam(i, j, A(i), -1), b.rho(j, k, A(j), -1))),
                       b.rho(i, k, A(i)));
                // omega_jk omega_ij omega_jk = omega_ik
                b.emit("12", b.desc({{"omega braid, i", i}, {"j", j}, {"k", k}}),
                       compose(b.omega(j, k), compose(b.omega(i, j), b.omega(j, k))),
                       b.omega(i, k));
                // disjoint transvections commute
                b.emit("12", b.desc({{"rho rho, i", i}, {"j", j}, {"k", k}}),
                       compose(b.rho(i, j, A(i)), b.rho(i, k, A(i))),
                       compose(b.rho(i, k, A(i)), b.rho(i, j, A(i))));
            }
    return std::move(b.out);
}

RelationSuite enumerate_relations(const FreeProduct& G, const SubgroupSpec& N,
                                  const Sampling& sampling) {
    G.check_subgroup_spec(N);
    RelationSuite suite;
    Builder b{G, sampling, {}};
    bool has_finite = !G.spec().factors.empty();
    bool has_free = G.free_rank() > 0;

    if (has_finite) {
        b.family1();
        b.family2();
        b.family3();
        b.family4();
        b.family5();
        b.family6();
        b.family7();
        b.family8();
        b.family9();
        b.family10();
        b.family11();
    } else {
        for (int f = 1; f <= 11; ++f) suite.skipped_families.push_back(std::to_string(f));
    }
    if (has_free) {
        for (auto& inst : nielsen_relation_suite(G, sampling)) b.out.push_back(std::move(inst));
        if (has_finite) {
            b.family13();
            b.family14();
            b.family15();
            b.family16();
            b.family17();
            b.family18();
            b.family19();
            b.family20();
            b.family21();
        } else {
            for (int f : {13, 14, 17, 18, 19, 20, 21})
                suite.skipped_families.push_back(std::to_string(f));
            b.family15();  // reflection part is still meaningful
            b.family16();
        }
        b.family22();
        b.family23();
    } else {
        for (int f = 12; f <= 23; ++f) suite.skipped_families.push_back(std::to_string(f));
    }
    b.family0();
    suite.instances = std::move(b.out);
    return suite;
}

RelationReport verify_relation(const FreeProduct& G, const RelationInstance& inst,
                               const SubgroupSpec& N) {
    RelationReport rep;
    rep.family = inst.family;
    rep.params = inst.params;
    GeneratorImages lhs = images(G, inst.lhs);
    GeneratorImages rhs = images(G, inst.rhs);
    if (lhs == rhs) {
        rep.holds_exact = true;
        rep.conjugator = G.identity();
        rep.conjugator_in_n = true;
        if (inst.predicted_conjugator)
            rep.matches_predicted = inst.predicted_conjugator->is_identity();
        return rep;
    }
    auto w = find_inner_witness(G, images(G, compose(inst.lhs, inverse(inst.rhs))));
    if (!w) return rep;  // relation fails at every level; reported, not thrown
    rep.conjugator = w;
    rep.conjugator_in_n = G.in_subgroup(*w, N);
    if (inst.predicted_conjugator)
        rep.matches_predicted =
            images_of_ad(G, *w) == images_of_ad(G, *inst.predicted_conjugator);
    return rep;
}

}  // namespace fpaut
