#ifndef FPAUT_TESTS_SUPPORT_HPP
#define FPAUT_TESTS_SUPPORT_HPP

#include <optional>
#include <random>
#include <vector>

#include "fpaut/group.hpp"

namespace fpaut::testsupport {

inline std::vector<Word> syllable_choices(const FreeProduct& G, int pos,
                                          long long exp_bound) {
    std::vector<Word> out;
    if (G.is_free_position(pos)) {
        for (long long e = -exp_bound; e <= exp_bound; ++e)
            if (e != 0) out.push_back(G.free_letter(pos, e));
    } else {
        out = G.factor_nontrivial_elements(pos);
    }
    return out;
}

/// Every reduced word of syllable length <= max_len (free exponents bounded
/// by exp_bound), identity included.
inline std::vector<Word> all_words(const FreeProduct& G, int max_len,
                                   long long exp_bound = 2) {
    std::vector<Word> out{G.identity()};
    std::vector<Word> layer{G.identity()};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (int pos = 1; pos <= G.positions(); ++pos) {
                if (!w.syllables.empty() && w.syllables.back().pos == pos) continue;
                for (const Word& s : syllable_choices(G, pos, exp_bound)) {
                    Word ext = G.multiply(w, s);
                    if (ext.length() == w.length() + 1) {
                        next.push_back(ext);
                        out.push_back(std::move(ext));
                    }
                }
            }
        layer = std::move(next);
    }
    return out;
}

inline Word random_word(const FreeProduct& G, std::mt19937_64& rng, int len,
                        long long exp_bound = 3) {
    std::vector<Syllable> raw;
    int prev = 0;
    for (int k = 0; k < len; ++k) {
        int pos = 0;
        do {
            pos = 1 + static_cast<int>(rng() % static_cast<unsigned long long>(G.positions()));
        } while (pos == prev);
        prev = pos;
        if (G.is_free_position(pos)) {
            long long e = 1 + static_cast<long long>(rng() % static_cast<unsigned long long>(exp_bound));
            if (rng() & 1) e = -e;
            raw.push_back(Syllable{pos, {e}});
        } else {
            const FactorSpec& f = G.factor(pos);
            std::vector<long long> v(f.num_generators(), 0);
            bool nonzero = false;
            while (!nonzero) {
                for (std::size_t c = 0; c < v.size(); ++c) {
                    v[c] = static_cast<long long>(
                        rng() % static_cast<unsigned long long>(f.invariant_factors[c]));
                    nonzero = nonzero || v[c] != 0;
                }
            }
            raw.push_back(Syllable{pos, v});
        }
    }
    return G.normalize(raw);
}

/// Rejection-samples a random element of N of length <= max_len.
inline Word random_word_in(const FreeProduct& G, const SubgroupSpec& N,
                           std::mt19937_64& rng, int max_len, long long exp_bound = 3) {
    for (;;) {
        int len = static_cast<int>(rng() % static_cast<unsigned long long>(max_len + 1));
        Word w = random_word(G, rng, len, exp_bound);
        if (G.in_subgroup(w, N)) return w;
    }
}

inline std::optional<Word> brute_force_conjugator(const FreeProduct& G, const Word& w1,
                                                  const Word& w2, int max_len,
                                                  long long exp_bound = 2) {
    for (const Word& g : all_words(G, max_len, exp_bound))
        if (G.conjugate(g, w1) == w2) return g;
    return std::nullopt;
}

}  // namespace fpaut::testsupport

#endif
