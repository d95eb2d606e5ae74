#ifndef FPAUT_RESTRICTION_HPP
#define FPAUT_RESTRICTION_HPP

#include <string>
#include <vector>

#include "fpaut/automorphism.hpp"
#include "fpaut/covering.hpp"
#include "fpaut/group.hpp"

namespace fpaut {

/// An endomorphism of the free group on the computed basis, one image word
/// (signed 1-based letters) per basis letter.  `verified` is set only by a
/// successful automorphism certificate.
struct FreeGroupAut {
    std::size_t m = 0;
    std::vector<std::vector<int>> letter_images;
    bool verified = false;

    bool operator==(const FreeGroupAut& o) const {
        return m == o.m && letter_images == o.letter_images;
    }
};

FreeGroupAut free_identity(std::size_t m);
bool is_free_identity(const FreeGroupAut& f);
/// (f o g)(x) = f(g(x))
FreeGroupAut compose_free(const FreeGroupAut& f, const FreeGroupAut& g);
std::vector<int> apply_free(const FreeGroupAut& f, const std::vector<int>& word);

/// psi|_N in the computed basis: each basis word is pushed through the
/// automorphism (staying in N since N is characteristic) and rewritten.
FreeGroupAut restrict_to_basis(const FreeProduct& G, const AutWord& A,
                               const FreeBasis& B);

/// Certifies that the restriction is invertible by composing with the
/// restriction of the inverse on both sides.
bool verify_automorphism(const FreeProduct& G, const AutWord& A, const FreeBasis& B);

struct InjectivityReport {
    bool skipped = false;        // the Z/2 * Z/2 exclusion
    std::string skip_reason;
    long long words_checked = 0;
    std::vector<AutWord> violations;  // non-identity words restricting to id
};

/// Evidence for the injectivity of Aut(G) -> Aut(N): every composition of
/// up to max_len standard generators whose images differ from the identity
/// must restrict to a non-identity map.  `generator_cap` limits the
/// generating set (0 = all).
InjectivityReport injectivity_probe(const FreeProduct& G, const FreeBasis& B,
                                    int max_len, std::size_t generator_cap = 0);

/// The standard generating set of Aut(G) in deterministic order: factor
/// automorphisms, permutations, Dehn twists, right/left transvections,
/// reflections; twist/transvection elements run over the nontrivial factor
/// elements and a_i^{+1}/a_i^{-1}.
std::vector<GenAut> standard_generators(const FreeProduct& G);

}  // namespace fpaut

#endif
