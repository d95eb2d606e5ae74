#include "fpaut/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fpaut {

namespace {

long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

bool payload_trivial(const Syllable& s) {
    return std::all_of(s.payload.begin(), s.payload.end(),
                       [](long long c) { return c == 0; });
}

}  // namespace

long long FactorSpec::order() const {
    long long p = 1;
    for (long long m : invariant_factors) p *= m;
    return p;
}

bool AbelVector::is_zero() const {
    for (long long c : free_part)
        if (c != 0) return false;
    for (const auto& block : factor_part)
        for (long long c : block)
            if (c != 0) return false;
    return true;
}

SubgroupSpec SubgroupSpec::uniform(long long r) {
    return SubgroupSpec{Mode::Uniform, {r}};
}

SubgroupSpec SubgroupSpec::per_factor(std::vector<long long> rs) {
    return SubgroupSpec{Mode::PerFactor, std::move(rs)};
}

long long SubgroupSpec::exponent_at(int pos) const {
    if (mode == Mode::Uniform) return exponents.at(0);
    return exponents.at(static_cast<std::size_t>(pos) - 1);
}

FreeProduct::FreeProduct(GroupSpec spec) : spec_(std::move(spec)) {
    if (spec_.free_rank < 0)
        throw std::invalid_argument("free rank must be non-negative");
    for (const auto& f : spec_.factors) {
        if (f.invariant_factors.empty())
            throw std::invalid_argument("finite factor needs at least one invariant factor");
        for (long long m : f.invariant_factors)
            if (m < 2)
                throw std::invalid_argument("invariant factors must be >= 2");
    }
}

const FactorSpec& FreeProduct::factor(int pos) const {
    if (pos <= spec_.free_rank || pos > positions())
        throw std::invalid_argument("position is not a finite factor");
    return spec_.factors[static_cast<std::size_t>(pos - spec_.free_rank - 1)];
}

void FreeProduct::check_syllable(const Syllable& s) const {
    if (s.pos < 1 || s.pos > positions())
        throw std::invalid_argument("syllable position out of range");
    if (is_free_position(s.pos)) {
        if (s.payload.size() != 1)
            throw std::invalid_argument("free syllable payload must be a single exponent");
        return;
    }
    const FactorSpec& f = factor(s.pos);
    if (s.payload.size() != f.num_generators())
        throw std::invalid_argument("factor syllable payload size mismatch");
    for (std::size_t k = 0; k < s.payload.size(); ++k)
        if (s.payload[k] < 0 || s.payload[k] >= f.invariant_factors[k])
            throw std::invalid_argument("factor syllable coordinate out of range");
}

void FreeProduct::check_word(const Word& w) const {
    int prev = 0;
    for (const auto& s : w.syllables) {
        check_syllable(s);
        if (payload_trivial(s))
            throw std::invalid_argument("word contains an identity syllable");
        if (s.pos == prev)
            throw std::invalid_argument("word is not in normal form");
        prev = s.pos;
    }
}

Word FreeProduct::free_letter(int pos, long long exp) const {
    if (!is_free_position(pos))
        throw std::invalid_argument("not a free position");
    if (exp == 0) return identity();
    return Word{{Syllable{pos, {exp}}}};
}

Word FreeProduct::factor_element(int pos, std::vector<long long> coords) const {
    const FactorSpec& f = factor(pos);
    if (coords.size() != f.num_generators())
        throw std::invalid_argument("coordinate vector size mismatch");
    for (std::size_t k = 0; k < coords.size(); ++k)
        coords[k] = mod_reduce(coords[k], f.invariant_factors[k]);
    Syllable s{pos, std::move(coords)};
    if (payload_trivial(s)) return identity();
    return Word{{std::move(s)}};
}

Word FreeProduct::factor_generator(int pos, std::size_t k) const {
    const FactorSpec& f = factor(pos);
    if (k >= f.num_generators())
        throw std::invalid_argument("generator index out of range");
    std::vector<long long> coords(f.num_generators(), 0);
    coords[k] = 1;
    return factor_element(pos, std::move(coords));
}

std::vector<Word> FreeProduct::factor_nontrivial_elements(int pos) const {
    const FactorSpec& f = factor(pos);
    std::vector<long long> v(f.num_generators(), 0);
    std::vector<Word> out;
    for (;;) {
        // odometer over all coordinate vectors, lexicographic
        std::size_t k = f.num_generators();
        while (k > 0) {
            --k;
            if (++v[k] < f.invariant_factors[k]) break;
            v[k] = 0;
            if (k == 0) return out;
        }
        out.push_back(Word{{Syllable{pos, v}}});
    }
}

long long FreeProduct::factor_order(int pos) const { return factor(pos).order(); }

Word FreeProduct::normalize(std::span<const Syllable> raw) const {
    // Stack reduction: merge same-position neighbours, drop trivial
    // syllables, repeat to a fixpoint.
    std::vector<Syllable> out;
    for (const Syllable& s0 : raw) {
        check_syllable(s0);
        Syllable s = s0;
        if (!is_free_position(s.pos)) {
            const FactorSpec& f = factor(s.pos);
            for (std::size_t k = 0; k < s.payload.size(); ++k)
                s.payload[k] = mod_reduce(s.payload[k], f.invariant_factors[k]);
        }
        if (payload_trivial(s)) continue;
        if (!out.empty() && out.back().pos == s.pos) {
            Syllable& top = out.back();
            if (is_free_position(s.pos)) {
                top.payload[0] += s.payload[0];
            } else {
                const FactorSpec& f = factor(s.pos);
                for (std::size_t k = 0; k < s.payload.size(); ++k)
                    top.payload[k] = mod_reduce(top.payload[k] + s.payload[k],
                                                f.invariant_factors[k]);
            }
            if (payload_trivial(top)) out.pop_back();
        } else {
            out.push_back(std::move(s));
        }
    }
    return Word{std::move(out)};
}

Word FreeProduct::multiply(const Word& w1, const Word& w2) const {
    std::vector<Syllable> cat;
    cat.reserve(w1.syllables.size() + w2.syllables.size());
    cat.insert(cat.end(), w1.syllables.begin(), w1.syllables.end());
    cat.insert(cat.end(), w2.syllables.begin(), w2.syllables.end());
    return normalize(cat);
}

Word FreeProduct::invert(const Word& w) const {
    std::vector<Syllable> rev;
    rev.reserve(w.syllables.size());
    for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
        Syllable s = *it;
        if (is_free_position(s.pos)) {
            s.payload[0] = -s.payload[0];
        } else {
            const FactorSpec& f = factor(s.pos);
            for (std::size_t k = 0; k < s.payload.size(); ++k)
                s.payload[k] = mod_reduce(-s.payload[k], f.invariant_factors[k]);
        }
        rev.push_back(std::move(s));
    }
    return normalize(rev);
}

Word FreeProduct::power(const Word& w, long long k) const {
    Word base = k < 0 ? invert(w) : w;
    long long reps = k < 0 ? -k : k;
    Word acc = identity();
    for (long long i = 0; i < reps; ++i) acc = multiply(acc, base);
    return acc;
}

Word FreeProduct::conjugate(const Word& g, const Word& w) const {
    return multiply(multiply(g, w), invert(g));
}

Word FreeProduct::commutator(const Word& u, const Word& v) const {
    return multiply(multiply(u, v), multiply(invert(u), invert(v)));
}

Word FreeProduct::product(std::span<const Word> ws) const {
    Word acc = identity();
    for (const Word& w : ws) acc = multiply(acc, w);
    return acc;
}

AbelVector FreeProduct::abel_zero() const {
    AbelVector v;
    v.free_part.assign(static_cast<std::size_t>(spec_.free_rank), 0);
    for (const auto& f : spec_.factors)
        v.factor_part.emplace_back(f.num_generators(), 0);
    return v;
}

AbelVector FreeProduct::abelianize(const Word& w) const {
    AbelVector v = abel_zero();
    for (const Syllable& s : w.syllables) {
        if (is_free_position(s.pos)) {
            v.free_part[static_cast<std::size_t>(s.pos - 1)] += s.payload[0];
        } else {
            const FactorSpec& f = factor(s.pos);
            auto& block = v.factor_part[static_cast<std::size_t>(s.pos - spec_.free_rank - 1)];
            for (std::size_t k = 0; k < s.payload.size(); ++k)
                block[k] = mod_reduce(block[k] + s.payload[k], f.invariant_factors[k]);
        }
    }
    return v;
}

AbelVector FreeProduct::abel_add(const AbelVector& x, const AbelVector& y) const {
    AbelVector v = x;
    for (std::size_t i = 0; i < v.free_part.size(); ++i) v.free_part[i] += y.free_part[i];
    for (std::size_t i = 0; i < v.factor_part.size(); ++i) {
        const FactorSpec& f = spec_.factors[i];
        for (std::size_t k = 0; k < v.factor_part[i].size(); ++k)
            v.factor_part[i][k] = mod_reduce(v.factor_part[i][k] + y.factor_part[i][k],
                                             f.invariant_factors[k]);
    }
    return v;
}

void FreeProduct::check_subgroup_spec(const SubgroupSpec& N) const {
    for (long long r : N.exponents)
        if (r < 1) throw std::invalid_argument("subgroup exponents must be positive");
    if (N.mode == SubgroupSpec::Mode::Uniform) {
        if (N.exponents.size() != 1)
            throw std::invalid_argument("uniform subgroup takes a single exponent");
        return;
    }
    if (spec_.free_rank != 0)
        throw std::invalid_argument("per-factor exponents require a group without free factor");
    if (N.exponents.size() != static_cast<std::size_t>(positions()))
        throw std::invalid_argument("per-factor subgroup needs one exponent per factor");
    for (int i = 1; i <= positions(); ++i)
        for (int j = i + 1; j <= positions(); ++j)
            if (factor(i) == factor(j) && N.exponent_at(i) != N.exponent_at(j))
                throw std::invalid_argument(
                    "isomorphic factors must carry equal exponents");
}

bool FreeProduct::in_subgroup(const Word& w, const SubgroupSpec& N) const {
    check_subgroup_spec(N);
    AbelVector v = abelianize(w);
    // N contains G', so membership is decided in the abelianisation:
    // free coordinates mod r, factor coordinates in r_i G_i.
    for (long long c : v.free_part)
        if (mod_reduce(c, N.exponent_at(1)) != 0) return false;
    for (std::size_t i = 0; i < v.factor_part.size(); ++i) {
        int pos = spec_.free_rank + static_cast<int>(i) + 1;
        long long r = N.exponent_at(pos);
        const FactorSpec& f = spec_.factors[i];
        for (std::size_t k = 0; k < v.factor_part[i].size(); ++k) {
            long long g = std::gcd(r, f.invariant_factors[k]);
            if (v.factor_part[i][k] % g != 0) return false;
        }
    }
    return true;
}

FreeProduct::CyclicForm FreeProduct::cyclic_reduce(const Word& w) const {
    Word core = w;
    Word conj = identity();
    while (core.length() >= 2 &&
           core.syllables.front().pos == core.syllables.back().pos) {
        Syllable head = core.syllables.front();
        std::vector<Syllable> rest(core.syllables.begin() + 1, core.syllables.end());
        rest.push_back(head);  // s^{-1} (s u t) s = u (t s)
        conj = multiply(conj, Word{{head}});
        core = normalize(rest);
    }
    return CyclicForm{std::move(core), std::move(conj)};
}

std::optional<Word> FreeProduct::solve_conjugator(const Word& w1, const Word& w2) const {
    CyclicForm c1 = cyclic_reduce(w1);
    CyclicForm c2 = cyclic_reduce(w2);
    const Word& u = c1.core;
    const Word& v = c2.core;
    if (u.length() != v.length()) return std::nullopt;

    if (u.length() <= 1) {
        // Single-syllable cores: conjugate iff equal.  All factors are
        // abelian, so within-factor conjugacy is equality.
        if (u != v) return std::nullopt;
        return multiply(c2.conj, invert(c1.conj));
    }

    // Length >= 2: cyclically reduced words are conjugate iff one is a
    // syllable rotation of the other.  p^{-1} u p rotates the prefix p away.
    std::size_t m = u.length();
    for (std::size_t r = 0; r < m; ++r) {
        bool match = true;
        for (std::size_t k = 0; k < m && match; ++k)
            match = (u.syllables[(r + k) % m] == v.syllables[k]);
        if (!match) continue;
        Word prefix{std::vector<Syllable>(u.syllables.begin(),
                                          u.syllables.begin() + static_cast<long>(r))};
        return multiply(c2.conj, multiply(invert(prefix), invert(c1.conj)));
    }
    return std::nullopt;
}

std::string FreeProduct::to_string(const Word& w) const {
    if (w.is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const Syllable& s : w.syllables) {
        if (!first) os << '.';
        first = false;
        if (is_free_position(s.pos)) {
            os << 'a' << s.pos;
            if (s.payload[0] != 1) os << '^' << s.payload[0];
        } else {
            os << 'g' << s.pos;
            if (s.payload.size() == 1) {
                if (s.payload[0] != 1) os << '^' << s.payload[0];
            } else {
                os << '(';
                for (std::size_t k = 0; k < s.payload.size(); ++k) {
                    if (k) os << ',';
                    os << s.payload[k];
                }
                os << ')';
            }
        }
    }
    return os.str();
}

}  // namespace fpaut
