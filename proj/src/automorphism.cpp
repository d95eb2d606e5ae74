#include "fpaut/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fpaut {

namespace {

long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

std::vector<long long> matrix_apply(const FactorMatrix& M, const FactorSpec& f,
                                    const std::vector<long long>& v) {
    std::size_t k = f.num_generators();
    std::vector<long long> out(k, 0);
    for (std::size_t row = 0; row < k; ++row) {
        long long acc = 0;
        for (std::size_t col = 0; col < k; ++col)
            acc += mod_reduce(M[row][col], f.invariant_factors[row]) *
                   mod_reduce(v[col], f.invariant_factors[row]);
        out[row] = mod_reduce(acc, f.invariant_factors[row]);
    }
    return out;
}

void check_matrix_shape(const FactorMatrix& M, const FactorSpec& f) {
    std::size_t k = f.num_generators();
    if (M.size() != k)
        throw std::invalid_argument("factor matrix has wrong number of rows");
    for (const auto& row : M)
        if (row.size() != k)
            throw std::invalid_argument("factor matrix has wrong number of columns");
    // e_j has order m_j, so its image needs m_l | M[l][j] * m_j.
    for (std::size_t row = 0; row < k; ++row)
        for (std::size_t col = 0; col < k; ++col)
            if ((M[row][col] * f.invariant_factors[col]) % f.invariant_factors[row] != 0)
                throw std::invalid_argument("matrix does not define an endomorphism");
}

constexpr long long kFactorEnumerationCap = 1 << 20;

/// All coordinate vectors of the factor, odometer order.
std::vector<std::vector<long long>> all_elements(const FactorSpec& f) {
    if (f.order() > kFactorEnumerationCap)
        throw std::invalid_argument("finite factor too large to enumerate");
    std::vector<std::vector<long long>> out;
    std::vector<long long> v(f.num_generators(), 0);
    out.push_back(v);
    for (;;) {
        std::size_t k = f.num_generators();
        bool carry = true;
        while (k > 0 && carry) {
            --k;
            carry = (++v[k] == f.invariant_factors[k]);
            if (carry) v[k] = 0;
        }
        if (carry) return out;
        out.push_back(v);
    }
}

/// Inverse of an invertible matrix, via the element permutation it induces.
/// Cyclic factors short-circuit to a modular inverse.
std::optional<FactorMatrix> matrix_inverse(const FactorMatrix& M, const FactorSpec& f) {
    if (f.num_generators() == 1) {
        long long m = f.invariant_factors[0];
        long long a = mod_reduce(M[0][0], m);
        long long t = 0, new_t = 1, r = m, new_r = a;
        while (new_r != 0) {
            long long q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (r != 1) return std::nullopt;
        return FactorMatrix{{mod_reduce(t, m)}};
    }
    std::map<std::vector<long long>, std::vector<long long>> backward;
    for (const auto& v : all_elements(f)) {
        auto img = matrix_apply(M, f, v);
        if (!backward.emplace(std::move(img), v).second) return std::nullopt;  // not injective
    }
    std::size_t k = f.num_generators();
    FactorMatrix inv(k, std::vector<long long>(k, 0));
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<long long> e(k, 0);
        e[col] = 1;
        auto it = backward.find(e);
        if (it == backward.end()) return std::nullopt;
        for (std::size_t row = 0; row < k; ++row) inv[row][col] = it->second[row];
    }
    return inv;
}

Syllable reduce_gamma(const FreeProduct& /*G*/, int i, const Word& gamma) {
    if (gamma.length() != 1)
        throw std::invalid_argument("twist/transvection element must be a single syllable");
    const Syllable& s = gamma.syllables[0];
    if (s.pos != i)
        throw std::invalid_argument("twist/transvection element must live in factor i");
    return s;
}

Syllable invert_syllable(const FreeProduct& G, const Syllable& s) {
    Syllable t = s;
    if (G.is_free_position(s.pos)) {
        t.payload[0] = -t.payload[0];
    } else {
        const FactorSpec& f = G.factor(s.pos);
        for (std::size_t k = 0; k < t.payload.size(); ++k)
            t.payload[k] = mod_reduce(-t.payload[k], f.invariant_factors[k]);
    }
    return t;
}

}  // namespace

GenAut make_factor_aut(const FreeProduct& G, int i, FactorMatrix M) {
    const FactorSpec& f = G.factor(i);
    check_matrix_shape(M, f);
    auto inv = matrix_inverse(M, f);
    if (!inv)
        throw std::invalid_argument("factor matrix is not invertible");
    GenAut g;
    g.kind = GenAut::Kind::FactorAut;
    g.i = i;
    g.matrix = std::move(M);
    g.matrix_inv = std::move(*inv);
    return g;
}

GenAut make_permutation(const FreeProduct& G, int i, int j) {
    if (i == j) throw std::invalid_argument("permutation needs distinct positions");
    bool free_i = G.is_free_position(i), free_j = G.is_free_position(j);
    if (free_i != free_j)
        throw std::invalid_argument("permutation cannot mix free and finite positions");
    if (!free_i && !(G.factor(i) == G.factor(j)))
        throw std::invalid_argument("permutation requires identical factors");
    GenAut g;
    g.kind = GenAut::Kind::Permutation;
    g.i = i;
    g.j = j;
    return g;
}

GenAut make_dehn_twist(const FreeProduct& G, int i, int j, const Word& gamma) {
    if (G.is_free_position(j))
        throw std::invalid_argument("Dehn twist target must be a finite factor");
    if (i == j) throw std::invalid_argument("Dehn twist needs i != j");
    GenAut g;
    g.kind = GenAut::Kind::DehnTwist;
    g.i = i;
    g.j = j;
    g.gamma = reduce_gamma(G, i, gamma);
    return g;
}

GenAut make_right_transvection(const FreeProduct& G, int i, int j, const Word& gamma) {
    if (!G.is_free_position(j))
        throw std::invalid_argument("transvection target must be a free letter");
    if (i == j) throw std::invalid_argument("transvection needs i != j");
    GenAut g;
    g.kind = GenAut::Kind::RightTransvection;
    g.i = i;
    g.j = j;
    g.gamma = reduce_gamma(G, i, gamma);
    return g;
}

GenAut make_left_transvection(const FreeProduct& G, int i, int j, const Word& gamma) {
    GenAut g = make_right_transvection(G, i, j, gamma);
    g.kind = GenAut::Kind::LeftTransvection;
    return g;
}

GenAut make_reflection(const FreeProduct& G, int i) {
    if (!G.is_free_position(i))
        throw std::invalid_argument("reflection needs a free position");
    GenAut g;
    g.kind = GenAut::Kind::Reflection;
    g.i = i;
    return g;
}

std::vector<FactorMatrix> enumerate_factor_automorphisms(const FreeProduct& G, int pos) {
    const FactorSpec& f = G.factor(pos);
    std::size_t k = f.num_generators();
    if (k == 1) {
        long long m = f.invariant_factors[0];
        std::vector<FactorMatrix> out;
        for (long long u = 1; u < m; ++u)
            if (std::gcd(u, m) == 1) out.push_back(FactorMatrix{{u}});
        return out;
    }
    // Entry (row, col) must be a multiple of m_row / gcd(m_row, m_col).
    std::vector<std::vector<long long>> choices;
    for (std::size_t row = 0; row < k; ++row)
        for (std::size_t col = 0; col < k; ++col) {
            long long step = f.invariant_factors[row] /
                             std::gcd(f.invariant_factors[row], f.invariant_factors[col]);
            std::vector<long long> vals;
            for (long long v = 0; v < f.invariant_factors[row]; v += step) vals.push_back(v);
            choices.push_back(std::move(vals));
        }
    long long total = 1;
    for (const auto& c : choices) {
        total *= static_cast<long long>(c.size());
        if (total > kFactorEnumerationCap)
            throw std::invalid_argument("factor too large to enumerate automorphisms");
    }
    std::vector<FactorMatrix> out;
    std::vector<std::size_t> idx(choices.size(), 0);
    for (;;) {
        FactorMatrix M(k, std::vector<long long>(k, 0));
        for (std::size_t e = 0; e < choices.size(); ++e)
            M[e / k][e % k] = choices[e][idx[e]];
        if (matrix_inverse(M, f)) out.push_back(std::move(M));
        std::size_t e = choices.size();
        bool carry = true;
        while (e > 0 && carry) {
            --e;
            carry = (++idx[e] == choices[e].size());
            if (carry) idx[e] = 0;
        }
        if (carry) break;
    }
    // identity first, then lexicographic
    std::sort(out.begin(), out.end());
    FactorMatrix id(k, std::vector<long long>(k, 0));
    for (std::size_t d = 0; d < k; ++d) id[d][d] = 1;
    auto it = std::find(out.begin(), out.end(), id);
    if (it != out.end()) std::rotate(out.begin(), it, it + 1);
    return out;
}

Word apply_generator(const FreeProduct& G, const GenAut& g, int sign, const Word& w) {
    G.check_word(w);
    std::vector<Syllable> out;
    out.reserve(w.syllables.size());
    auto push_gamma = [&](const Syllable& s, int gsign) {
        out.push_back(gsign > 0 ? s : invert_syllable(G, s));
    };
    for (const Syllable& s : w.syllables) {
        switch (g.kind) {
            case GenAut::Kind::FactorAut: {
                if (s.pos == g.i) {
                    const FactorMatrix& M = sign > 0 ? g.matrix : g.matrix_inv;
                    out.push_back(Syllable{s.pos, matrix_apply(M, G.factor(g.i), s.payload)});
                } else {
                    out.push_back(s);
                }
                break;
            }
            case GenAut::Kind::Permutation: {
                if (s.pos == g.i)
                    out.push_back(Syllable{g.j, s.payload});
                else if (s.pos == g.j)
                    out.push_back(Syllable{g.i, s.payload});
                else
                    out.push_back(s);
                break;
            }
            case GenAut::Kind::DehnTwist: {
                if (s.pos == g.j) {
                    // g_j -> c^{-1} g_j c (c -> c^{-1} for the inverse twist)
                    push_gamma(g.gamma, -sign);
                    out.push_back(s);
                    push_gamma(g.gamma, sign);
                } else {
                    out.push_back(s);
                }
                break;
            }
            case GenAut::Kind::RightTransvection:
            case GenAut::Kind::LeftTransvection: {
                if (s.pos != g.j) {
                    out.push_back(s);
                    break;
                }
                long long e = s.payload[0];
                bool right = g.kind == GenAut::Kind::RightTransvection;
                Syllable aj{g.j, {e > 0 ? 1LL : -1LL}};
                for (long long step = 0; step < (e > 0 ? e : -e); ++step) {
                    // a_j -> a_j c (right) or c a_j (left); negative powers
                    // traverse the inverted pair.
                    int gsign = e > 0 ? sign : -sign;
                    if (right == (e > 0)) {
                        out.push_back(aj);
                        push_gamma(g.gamma, gsign);
                    } else {
                        push_gamma(g.gamma, gsign);
                        out.push_back(aj);
                    }
                }
                break;
            }
            case GenAut::Kind::Reflection: {
                if (s.pos == g.i)
                    out.push_back(Syllable{s.pos, {-s.payload[0]}});
                else
                    out.push_back(s);
                break;
            }
        }
    }
    return G.normalize(out);
}

Word apply(const FreeProduct& G, const AutWord& A, const Word& w) {
    Word acc = G.normalize(w.syllables);
    for (auto it = A.letters.rbegin(); it != A.letters.rend(); ++it)
        acc = apply_generator(G, it->gen, it->sign, acc);
    return acc;
}

GeneratorImages identity_images(const FreeProduct& G) {
    GeneratorImages I;
    for (int i = 1; i <= G.free_rank(); ++i) I.free_images.push_back(G.free_letter(i));
    for (int i = G.free_rank() + 1; i <= G.positions(); ++i) {
        std::vector<Word> gens;
        for (std::size_t k = 0; k < G.factor(i).num_generators(); ++k)
            gens.push_back(G.factor_generator(i, k));
        I.factor_images.push_back(std::move(gens));
    }
    return I;
}

GeneratorImages images(const FreeProduct& G, const AutWord& A) {
    GeneratorImages I = identity_images(G);
    for (Word& w : I.free_images) w = apply(G, A, w);
    for (auto& gens : I.factor_images)
        for (Word& w : gens) w = apply(G, A, w);
    return I;
}

GeneratorImages make_generator_images(const FreeProduct& G,
                                      std::vector<Word> free_images,
                                      std::vector<std::vector<Word>> factor_images) {
    if (free_images.size() != static_cast<std::size_t>(G.free_rank()) ||
        factor_images.size() != G.spec().factors.size())
        throw std::invalid_argument("image table has wrong shape");
    for (const Word& w : free_images) G.check_word(w);
    for (std::size_t i = 0; i < factor_images.size(); ++i) {
        const FactorSpec& f = G.spec().factors[i];
        if (factor_images[i].size() != f.num_generators())
            throw std::invalid_argument("image table has wrong shape");
        for (std::size_t k = 0; k < f.num_generators(); ++k) {
            G.check_word(factor_images[i][k]);
            if (!G.power(factor_images[i][k], f.invariant_factors[k]).is_identity())
                throw std::invalid_argument("factor image violates the factor relations");
        }
    }
    return GeneratorImages{std::move(free_images), std::move(factor_images)};
}

AutWord compose(const AutWord& A, const AutWord& B) {
    AutWord C = A;
    C.letters.insert(C.letters.end(), B.letters.begin(), B.letters.end());
    return C;
}

AutWord inverse(const AutWord& A) {
    AutWord C;
    C.letters.reserve(A.letters.size());
    for (auto it = A.letters.rbegin(); it != A.letters.rend(); ++it)
        C.letters.push_back(AutLetter{it->gen, -it->sign});
    return C;
}

bool equal(const FreeProduct& G, const AutWord& A, const AutWord& B) {
    return images(G, A) == images(G, B);
}

GeneratorImages conjugate_images(const FreeProduct& G, const Word& g,
                                 const GeneratorImages& I) {
    GeneratorImages J = I;
    for (Word& w : J.free_images) w = G.conjugate(g, w);
    for (auto& gens : J.factor_images)
        for (Word& w : gens) w = G.conjugate(g, w);
    return J;
}

GeneratorImages images_of_ad(const FreeProduct& G, const Word& g) {
    return conjugate_images(G, g, identity_images(G));
}

namespace {

std::vector<Word> all_generator_words(const FreeProduct& G) {
    std::vector<Word> gens;
    for (int i = 1; i <= G.free_rank(); ++i) gens.push_back(G.free_letter(i));
    for (int i = G.free_rank() + 1; i <= G.positions(); ++i)
        for (std::size_t k = 0; k < G.factor(i).num_generators(); ++k)
            gens.push_back(G.factor_generator(i, k));
    return gens;
}

const Word& image_of(const FreeProduct& G, const GeneratorImages& I, const Word& gen) {
    const Syllable& s = gen.syllables[0];
    if (G.is_free_position(s.pos))
        return I.free_images[static_cast<std::size_t>(s.pos - 1)];
    std::size_t k = 0;
    while (s.payload[k] == 0) ++k;
    return I.factor_images[static_cast<std::size_t>(s.pos - G.free_rank() - 1)][k];
}

bool is_ad_of(const FreeProduct& G, const Word& g, const GeneratorImages& I) {
    for (const Word& gen : all_generator_words(G))
        if (G.conjugate(g, gen) != image_of(G, I, gen)) return false;
    return true;
}

}  // namespace

std::optional<Word> find_inner_witness(const FreeProduct& G, const GeneratorImages& I) {
    if (G.positions() < 2)
        throw std::invalid_argument("inner detection needs n >= 2");

    // Pivot on a finite factor when one exists: its centraliser is the
    // factor itself, a finite list of candidates.
    int pivot_pos = 0;
    for (int i = G.free_rank() + 1; i <= G.positions(); ++i) {
        pivot_pos = i;
        break;
    }
    Word pivot = pivot_pos ? G.factor_generator(pivot_pos, 0) : G.free_letter(1);
    const Word& pivot_image = image_of(G, I, pivot);

    auto g0 = G.solve_conjugator(pivot, pivot_image);
    if (!g0) return std::nullopt;

    if (pivot_pos) {
        std::vector<Word> centraliser = G.factor_nontrivial_elements(pivot_pos);
        centraliser.insert(centraliser.begin(), G.identity());
        for (const Word& h : centraliser) {
            Word cand = G.multiply(*g0, h);
            if (is_ad_of(G, cand, I)) return cand;
        }
        return std::nullopt;
    }

    // Free pivot: candidates g0 a_1^k.  Any solution g satisfies
    // |g| <= (max image length + 1)/2 + 1 (images of the other generators
    // grow like 2|g|), hence |k| <= |g| + |g0| <= maxlen + |g0| + 2.
    std::size_t maxlen = 0;
    for (const Word& w : I.free_images) maxlen = std::max(maxlen, w.length());
    for (const auto& gens : I.factor_images)
        for (const Word& w : gens) maxlen = std::max(maxlen, w.length());
    long long bound = static_cast<long long>(maxlen + g0->length() + 2);
    for (long long k = -bound; k <= bound; ++k) {
        Word cand = G.multiply(*g0, G.free_letter(1, k));
        if (is_ad_of(G, cand, I)) return cand;
    }
    return std::nullopt;
}

std::optional<Word> equal_mod_inner(const FreeProduct& G, const AutWord& A,
                                    const AutWord& B) {
    return find_inner_witness(G, images(G, compose(A, inverse(B))));
}

std::optional<Word> equal_mod_inner_n(const FreeProduct& G, const AutWord& A,
                                      const AutWord& B, const SubgroupSpec& N) {
    auto g = equal_mod_inner(G, A, B);
    if (!g) return std::nullopt;
    // The centre is trivial for n >= 2, so the witness is unique: either it
    // lies in N or no witness does.
    if (!G.in_subgroup(*g, N)) return std::nullopt;
    return g;
}

std::string to_string(const FreeProduct& G, const GenAut& g) {
    std::ostringstream os;
    switch (g.kind) {
        case GenAut::Kind::FactorAut: {
            os << "phi_" << g.i << '[';
            for (std::size_t r = 0; r < g.matrix.size(); ++r) {
                if (r) os << ';';
                for (std::size_t c = 0; c < g.matrix[r].size(); ++c) {
                    if (c) os << ',';
                    os << g.matrix[r][c];
                }
            }
            os << ']';
            break;
        }
        case GenAut::Kind::Permutation:
            os << "omega_" << g.i << '_' << g.j;
            break;
        case GenAut::Kind::DehnTwist:
            os << "alpha_" << g.i << '_' << g.j << '(' << G.to_string(Word{{g.gamma}}) << ')';
            break;
        case GenAut::Kind::RightTransvection:
            os << "rho_" << g.i << '_' << g.j << '(' << G.to_string(Word{{g.gamma}}) << ')';
            break;
        case GenAut::Kind::LeftTransvection:
            os << "lambda_" << g.i << '_' << g.j << '(' << G.to_string(Word{{g.gamma}}) << ')';
            break;
        case GenAut::Kind::Reflection:
            os << "tau_" << g.i;
            break;
    }
    return os.str();
}

std::string to_string(const FreeProduct& G, const AutWord& A) {
    if (A.letters.empty()) return "id";
    std::ostringstream os;
    for (std::size_t k = 0; k < A.letters.size(); ++k) {
        if (k) os << ' ';
        os << to_string(G, A.letters[k].gen);
        if (A.letters[k].sign < 0) os << "^-1";
    }
    return os.str();
}

}  // namespace fpaut
