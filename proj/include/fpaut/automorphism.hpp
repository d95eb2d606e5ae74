#ifndef FPAUT_AUTOMORPHISM_HPP
#define FPAUT_AUTOMORPHISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "fpaut/group.hpp"

namespace fpaut {

/// Integer matrix acting on the canonical generators of one finite factor.
/// Column j is the coordinate vector of the image of generator e_j.
using FactorMatrix = std::vector<std::vector<long long>>;

/// One standard generator of Aut(G):
///   FactorAut(i, M)          g_i -> M g_i on factor i > d
///   Permutation(i, j)        swaps isomorphic factors (or free letters)
///   DehnTwist(i, j, c)       g_j -> c^{-1} g_j c, j > d, c a syllable of i
///   RightTransvection(i,j,c) a_j -> a_j c, j <= d
///   LeftTransvection(i,j,c)  a_j -> c a_j, j <= d
///   Reflection(i)            a_i -> a_i^{-1}, i <= d
struct GenAut {
    enum class Kind {
        FactorAut,
        Permutation,
        DehnTwist,
        RightTransvection,
        LeftTransvection,
        Reflection,
    };

    Kind kind = Kind::Reflection;
    int i = 0;
    int j = 0;
    Syllable gamma;       // twists and transvections
    FactorMatrix matrix;  // FactorAut only
    FactorMatrix matrix_inv;

    bool operator==(const GenAut&) const = default;
};

GenAut make_factor_aut(const FreeProduct& G, int i, FactorMatrix M);
GenAut make_permutation(const FreeProduct& G, int i, int j);
GenAut make_dehn_twist(const FreeProduct& G, int i, int j, const Word& gamma);
GenAut make_right_transvection(const FreeProduct& G, int i, int j, const Word& gamma);
GenAut make_left_transvection(const FreeProduct& G, int i, int j, const Word& gamma);
GenAut make_reflection(const FreeProduct& G, int i);

/// All automorphisms of the finite factor at pos, as matrices (identity
/// first, then lexicographic).  Enumerated by brute force; intended for the
/// small factors of verification suites.
std::vector<FactorMatrix> enumerate_factor_automorphisms(const FreeProduct& G, int pos);

/// A word in the standard generators; the rightmost letter applies first
/// (plain function composition, matching the relation algebra of the
/// presentation).
struct AutLetter {
    GenAut gen;
    int sign = 1;  // +1 or -1
    bool operator==(const AutLetter&) const = default;
};

struct AutWord {
    std::vector<AutLetter> letters;

    static AutWord single(GenAut g, int sign = 1) { return AutWord{{AutLetter{std::move(g), sign}}}; }
    bool operator==(const AutWord&) const = default;
};

/// Evaluated action on the canonical generators: one word per free letter,
/// one word per canonical generator of each finite factor.
struct GeneratorImages {
    std::vector<Word> free_images;                     // index i-1, i <= d
    std::vector<std::vector<Word>> factor_images;      // index i-d-1, i > d
    bool operator==(const GeneratorImages&) const = default;
};

Word apply_generator(const FreeProduct& G, const GenAut& g, int sign, const Word& w);
Word apply(const FreeProduct& G, const AutWord& A, const Word& w);

GeneratorImages identity_images(const FreeProduct& G);
GeneratorImages images(const FreeProduct& G, const AutWord& A);
/// Validating constructor for externally supplied images: finite-factor
/// images must satisfy the factor relations (image^{m_k} = 1).
GeneratorImages make_generator_images(const FreeProduct& G,
                                      std::vector<Word> free_images,
                                      std::vector<std::vector<Word>> factor_images);

AutWord compose(const AutWord& A, const AutWord& B);
AutWord inverse(const AutWord& A);
bool equal(const FreeProduct& G, const AutWord& A, const AutWord& B);

GeneratorImages conjugate_images(const FreeProduct& G, const Word& g,
                                 const GeneratorImages& I);
GeneratorImages images_of_ad(const FreeProduct& G, const Word& g);

/// Searches for g with I = images of ad(g).  Requires n >= 2 (trivial
/// centre), so the witness is unique when it exists.  The free-letter
/// centraliser is scanned with the exponent bound |k| <= max image length
/// + |g0| + 2.
std::optional<Word> find_inner_witness(const FreeProduct& G, const GeneratorImages& I);

/// g with images(A) = conjugate_images(g, images(B)), i.e. equality in Out(G).
std::optional<Word> equal_mod_inner(const FreeProduct& G, const AutWord& A,
                                    const AutWord& B);
/// As above, but the witness must lie in N (equality in Aut(G)/N).
std::optional<Word> equal_mod_inner_n(const FreeProduct& G, const AutWord& A,
                                      const AutWord& B, const SubgroupSpec& N);

std::string to_string(const FreeProduct& G, const GenAut& g);
std::string to_string(const FreeProduct& G, const AutWord& A);

}  // namespace fpaut

#endif
