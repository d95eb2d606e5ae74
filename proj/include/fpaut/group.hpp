#ifndef FPAUT_GROUP_HPP
#define FPAUT_GROUP_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fpaut {

/// One finite abelian factor, given as a product of cyclic groups
/// Z/m_1 x ... x Z/m_k.  The list is kept as written; equality of factors
/// (used for permutation automorphisms) is literal equality of the lists.
struct FactorSpec {
    std::vector<long long> invariant_factors;

    long long order() const;
    std::size_t num_generators() const { return invariant_factors.size(); }

    bool operator==(const FactorSpec&) const = default;
};

/// A free product G = F_d * G_{d+1} * ... * G_n.  Positions 1..d are the
/// infinite cyclic free letters a_1..a_d, positions d+1..n the finite
/// abelian factors.
struct GroupSpec {
    int free_rank = 0;
    std::vector<FactorSpec> factors;

    int positions() const { return free_rank + static_cast<int>(factors.size()); }

    bool operator==(const GroupSpec&) const = default;
};

/// A syllable of a normal form: a nontrivial element of one factor.
/// Free position: payload = {exponent}, exponent != 0.
/// Finite position: payload = coordinate vector mod the invariant factors,
/// not all zero, each coordinate in [0, m_k).
struct Syllable {
    int pos = 0;
    std::vector<long long> payload;

    bool operator==(const Syllable&) const = default;
    auto operator<=>(const Syllable&) const = default;
};

/// A reduced normal form: adjacent syllables sit at distinct positions.
/// The empty word is the identity.
struct Word {
    std::vector<Syllable> syllables;

    bool is_identity() const { return syllables.empty(); }
    std::size_t length() const { return syllables.size(); }

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
};

/// Image of a word in the abelianisation Z^d x G_{d+1} x ... x G_n.
struct AbelVector {
    std::vector<long long> free_part;
    std::vector<std::vector<long long>> factor_part;

    bool is_zero() const;
    bool operator==(const AbelVector&) const = default;
};

/// The characteristic subgroup N.  Uniform(r) is N = G'G^r; PerFactor is
/// N = G'G_1^{r_1}...G_n^{r_n}, which requires d = 0 and equal exponents on
/// isomorphic factors.  All exponents are >= 1.  Splitting operations
/// additionally need gcd(r_i, n-1) = 1, which membership does not.
struct SubgroupSpec {
    enum class Mode { Uniform, PerFactor };
    Mode mode = Mode::Uniform;
    std::vector<long long> exponents;  // size 1 (Uniform) or n (PerFactor)

    static SubgroupSpec uniform(long long r);
    static SubgroupSpec per_factor(std::vector<long long> rs);

    long long exponent_at(int pos) const;
    bool operator==(const SubgroupSpec&) const = default;
};

/// The ambient free product together with all word arithmetic.  Values of
/// Word/Syllable are plain data; every operation that needs the factor
/// structure lives here.  All methods are const and the object is safe to
/// share across threads.
class FreeProduct {
public:
    explicit FreeProduct(GroupSpec spec);

    const GroupSpec& spec() const { return spec_; }
    int free_rank() const { return spec_.free_rank; }
    int positions() const { return spec_.positions(); }
    bool is_free_position(int pos) const { return pos >= 1 && pos <= spec_.free_rank; }
    /// Factor at a finite position (pos in d+1..n).
    const FactorSpec& factor(int pos) const;

    /// Throws std::invalid_argument when the syllable does not fit this
    /// group (bad position, wrong payload size, out-of-range coordinate).
    void check_syllable(const Syllable& s) const;
    void check_word(const Word& w) const;

    // -- construction helpers ------------------------------------------
    Word identity() const { return Word{}; }
    /// a_pos^exp for a free position.
    Word free_letter(int pos, long long exp = 1) const;
    /// Element of a finite factor from a coordinate vector (reduced here).
    Word factor_element(int pos, std::vector<long long> coords) const;
    /// k-th canonical generator of the finite factor at pos.
    Word factor_generator(int pos, std::size_t k = 0) const;
    /// All nontrivial elements of a finite factor, lexicographic order.
    std::vector<Word> factor_nontrivial_elements(int pos) const;
    long long factor_order(int pos) const;

    // -- word arithmetic -----------------------------------------------
    Word normalize(std::span<const Syllable> raw) const;
    Word multiply(const Word& w1, const Word& w2) const;
    Word invert(const Word& w) const;
    Word power(const Word& w, long long k) const;
    /// g w g^{-1}
    Word conjugate(const Word& g, const Word& w) const;
    /// [u, v] = u v u^{-1} v^{-1}
    Word commutator(const Word& u, const Word& v) const;
    Word product(std::span<const Word> ws) const;

    AbelVector abelianize(const Word& w) const;
    AbelVector abel_zero() const;
    AbelVector abel_add(const AbelVector& x, const AbelVector& y) const;

    /// Validates N against this group; throws on violation.
    void check_subgroup_spec(const SubgroupSpec& N) const;
    bool in_subgroup(const Word& w, const SubgroupSpec& N) const;

    /// w = conj . core . conj^{-1} with core cyclically reduced.
    struct CyclicForm {
        Word core;
        Word conj;
    };
    CyclicForm cyclic_reduce(const Word& w) const;

    /// Some g with g w1 g^{-1} = w2, or nullopt when not conjugate.
    std::optional<Word> solve_conjugator(const Word& w1, const Word& w2) const;

    std::string to_string(const Word& w) const;

private:
    GroupSpec spec_;
};

}  // namespace fpaut

#endif
