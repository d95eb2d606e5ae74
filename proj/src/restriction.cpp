#include "fpaut/restriction.hpp"

#include <stdexcept>

namespace fpaut {

FreeGroupAut free_identity(std::size_t m) {
    FreeGroupAut f;
    f.m = m;
    for (std::size_t k = 1; k <= m; ++k)
        f.letter_images.push_back({static_cast<int>(k)});
    f.verified = true;
    return f;
}

bool is_free_identity(const FreeGroupAut& f) {
    for (std::size_t k = 0; k < f.m; ++k)
        if (f.letter_images[k] != std::vector<int>{static_cast<int>(k + 1)}) return false;
    return true;
}

std::vector<int> apply_free(const FreeGroupAut& f, const std::vector<int>& word) {
    std::vector<int> out;
    for (int l : word) {
        std::size_t idx = static_cast<std::size_t>((l > 0 ? l : -l) - 1);
        if (idx >= f.m) throw std::invalid_argument("basis letter out of range");
        const std::vector<int>& img = f.letter_images[idx];
        if (l > 0) {
            out.insert(out.end(), img.begin(), img.end());
        } else {
            for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
        }
    }
    return free_reduce(std::move(out));
}

FreeGroupAut compose_free(const FreeGroupAut& f, const FreeGroupAut& g) {
    if (f.m != g.m) throw std::invalid_argument("mismatched basis sizes");
    FreeGroupAut h;
    h.m = f.m;
    for (const auto& img : g.letter_images) h.letter_images.push_back(apply_free(f, img));
    return h;
}

FreeGroupAut restrict_to_basis(const FreeProduct& G, const AutWord& A,
                               const FreeBasis& B) {
    FreeGroupAut f;
    f.m = B.size();
    for (const Word& b : B.words()) {
        Word image = apply(G, A, b);
        if (!G.in_subgroup(image, B.graph().subgroup()))
            throw std::logic_error("characteristic subgroup invariant broken");
        f.letter_images.push_back(B.rewrite(image));
    }
    return f;
}

bool verify_automorphism(const FreeProduct& G, const AutWord& A, const FreeBasis& B) {
    FreeGroupAut fwd = restrict_to_basis(G, A, B);
    FreeGroupAut bwd = restrict_to_basis(G, inverse(A), B);
    return is_free_identity(compose_free(fwd, bwd)) &&
           is_free_identity(compose_free(bwd, fwd));
}

std::vector<GenAut> standard_generators(const FreeProduct& G) {
    std::vector<GenAut> gens;
    for (int i = G.free_rank() + 1; i <= G.positions(); ++i) {
        auto mats = enumerate_factor_automorphisms(G, i);
        for (std::size_t k = 1; k < mats.size(); ++k)  // identity excluded
            gens.push_back(make_factor_aut(G, i, mats[k]));
    }
    for (int i = 1; i <= G.positions(); ++i)
        for (int j = i + 1; j <= G.positions(); ++j) {
            bool fi = G.is_free_position(i), fj = G.is_free_position(j);
            if ((fi && fj) || (!fi && !fj && G.factor(i) == G.factor(j)))
                gens.push_back(make_permutation(G, i, j));
        }
    auto gammas = [&](int i) {
        if (G.is_free_position(i))
            return std::vector<Word>{G.free_letter(i, 1), G.free_letter(i, -1)};
        return G.factor_nontrivial_elements(i);
    };
    for (int i = 1; i <= G.positions(); ++i)
        for (int j = G.free_rank() + 1; j <= G.positions(); ++j) {
            if (i == j) continue;
            for (const Word& g : gammas(i)) gens.push_back(make_dehn_twist(G, i, j, g));
        }
    for (int i = 1; i <= G.positions(); ++i)
        for (int j = 1; j <= G.free_rank(); ++j) {
            if (i == j) continue;
            for (const Word& g : gammas(i)) gens.push_back(make_right_transvection(G, i, j, g));
        }
    for (int i = 1; i <= G.positions(); ++i)
        for (int j = 1; j <= G.free_rank(); ++j) {
            if (i == j) continue;
            for (const Word& g : gammas(i)) gens.push_back(make_left_transvection(G, i, j, g));
        }
    for (int i = 1; i <= G.free_rank(); ++i) gens.push_back(make_reflection(G, i));
    return gens;
}

namespace {

bool is_w2(const FreeProduct& G) {
    if (G.free_rank() != 0 || G.positions() != 2) return false;
    return G.factor_order(1) == 2 && G.factor_order(2) == 2;
}

}  // namespace

InjectivityReport injectivity_probe(const FreeProduct& G, const FreeBasis& B,
                                    int max_len, std::size_t generator_cap) {
    InjectivityReport rep;
    if (is_w2(G)) {
        // the injectivity lemma assumes G is not Z/2 * Z/2
        rep.skipped = true;
        rep.skip_reason = "restriction injectivity excludes Z/2 * Z/2";
        return rep;
    }
    std::vector<GenAut> gens = standard_generators(G);
    if (generator_cap != 0 && gens.size() > generator_cap) gens.resize(generator_cap);

    GeneratorImages id = identity_images(G);
    FreeGroupAut free_id = free_identity(B.size());

    // depth-first over generator sequences of length 1..max_len
    std::vector<std::size_t> idx;
    AutWord word;
    auto check = [&]() {
        ++rep.words_checked;
        if (images(G, word) == id) return;
        if (restrict_to_basis(G, word, B) == free_id) rep.violations.push_back(word);
    };
    while (true) {
        if (static_cast<int>(idx.size()) < max_len) {
            idx.push_back(0);
            word.letters.push_back(AutLetter{gens[0], 1});
            check();
            continue;
        }
        while (!idx.empty() && idx.back() + 1 == gens.size()) {
            idx.pop_back();
            word.letters.pop_back();
        }
        if (idx.empty()) break;
        ++idx.back();
        word.letters.back() = AutLetter{gens[idx.back()], 1};
        check();
    }
    return rep;
}

}  // namespace fpaut
