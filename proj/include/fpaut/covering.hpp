#ifndef FPAUT_COVERING_HPP
#define FPAUT_COVERING_HPP

#include <string>
#include <vector>

#include "fpaut/group.hpp"

namespace fpaut {

/// The finite abelian quotient Q = G/N, componentwise: Z/r per free letter,
/// G_i/r_i G_i per finite factor.  Elements are flat coordinate vectors in
/// mixed-radix form (moduli 1 components stay 0).
class QuotientGroup {
public:
    QuotientGroup(const FreeProduct& G, const SubgroupSpec& N);

    long long order() const { return order_; }
    const std::vector<long long>& moduli() const { return moduli_; }
    std::size_t block_offset(int pos) const;  // first coordinate of position pos
    std::size_t block_size(int pos) const;

    std::vector<long long> zero() const { return std::vector<long long>(moduli_.size(), 0); }
    std::vector<long long> add(const std::vector<long long>& x,
                               const std::vector<long long>& y) const;
    std::vector<long long> negate(const std::vector<long long>& x) const;
    std::vector<long long> project(const FreeProduct& G, const Word& w) const;
    /// Image of a single syllable (a generator step) in Q.
    std::vector<long long> project_syllable(const FreeProduct& G, const Syllable& s) const;

    long long rank_of(const std::vector<long long>& q) const;  // lexicographic rank
    std::vector<long long> element_at(long long rank) const;

private:
    std::vector<long long> moduli_;
    std::vector<std::size_t> offsets_;  // per position 1..n
    std::vector<std::size_t> sizes_;
    long long order_ = 1;
};

/// The quotient graph N\A of the Bass-Serre tree of the star-shaped
/// splitting: one hub orbit with trivial stabiliser carrying d loops, plus
/// one edge orbit per finite factor.  Hub fibre is indexed by Q, the fibre
/// of factor i by Q with the i-block zeroed.
struct CoverVertex {
    int kind;                     // 0 = hub, otherwise the factor position
    std::vector<long long> q;
    std::string name;
};

struct CoverEdge {
    bool loop;                    // free-letter edge (hub to hub)
    int pos;                      // generator position it spells
    std::vector<long long> q;     // hub endpoint on the departure side
    int src;
    int dst;
};

class CoverGraph {
public:
    CoverGraph(const FreeProduct& G, const SubgroupSpec& N);

    const FreeProduct& group() const { return G_; }
    const SubgroupSpec& subgroup() const { return N_; }
    const QuotientGroup& quotient() const { return Q_; }
    const std::vector<CoverVertex>& vertices() const { return vertices_; }
    const std::vector<CoverEdge>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& incident_edges() const { return incident_; }
    int base_vertex() const { return 0; }

    int hub_vertex(const std::vector<long long>& q) const;
    int factor_vertex(int pos, const std::vector<long long>& q) const;
    /// Edge id of the base-edge copy at hub coordinate q.
    int edge_id(int pos, const std::vector<long long>& q) const;

private:
    FreeProduct G_;
    SubgroupSpec N_;
    QuotientGroup Q_;
    std::vector<CoverVertex> vertices_;
    std::vector<CoverEdge> edges_;
    std::vector<std::vector<int>> incident_;
    std::vector<long long> factor_fiber_offset_;  // vertex id offsets per factor
};

/// True when N acts freely: every vertex stabiliser r_i G_i vanishes.
bool is_free_cover(const FreeProduct& G, const SubgroupSpec& N);

/// True when N fixes a vertex of the tree (N lies in a conjugate of one
/// factor).  For the subgroups of this library that happens exactly for a
/// group with a single finite factor and no free letters (or no factors at
/// all): any larger free product puts nontrivial commutators into N.
bool is_contractible_cover(const FreeProduct& G, const SubgroupSpec& N);

/// |E| - |V| + 1.  Rejects non-free covers.
long long cover_rank(const CoverGraph& C);

/// Schreier basis of N from a breadth-first spanning tree of the cover.
class FreeBasis {
public:
    explicit FreeBasis(const CoverGraph& C);

    const CoverGraph& graph() const { return graph_; }
    std::size_t size() const { return basis_words_.size(); }
    const std::vector<Word>& words() const { return basis_words_; }
    const std::vector<int>& non_tree_edges() const { return non_tree_edges_; }
    bool is_tree_edge(int edge) const { return letter_of_edge_[static_cast<std::size_t>(edge)] == 0; }
    /// 0 for tree edges, otherwise the 1-based basis letter.
    int basis_letter(int edge) const { return letter_of_edge_[static_cast<std::size_t>(edge)]; }
    /// Tree-path representative of a vertex (a word mapping onto its fibre
    /// coordinate).
    const Word& representative(int vertex) const { return rep_[static_cast<std::size_t>(vertex)]; }

    /// Signed basis letters (1-based) obtained by tracing w through the
    /// cover; the result freely reduces and evaluates back to w.
    /// Throws std::invalid_argument when w is not in N.
    std::vector<int> rewrite(const Word& w) const;
    /// Product of basis words along a signed letter string.
    Word evaluate(const std::vector<int>& letters) const;

private:
    CoverGraph graph_;
    std::vector<Word> rep_;
    std::vector<int> letter_of_edge_;  // 0 for tree edges, else 1-based letter
    std::vector<int> non_tree_edges_;
    std::vector<Word> basis_words_;
};

std::vector<int> free_reduce(std::vector<int> letters);

/// Permutation action of q on the cover.
struct DeckAction {
    std::vector<int> vertex_map;
    std::vector<int> edge_map;
};

DeckAction deck_action(const CoverGraph& C, const std::vector<long long>& q);

/// DOT rendering; tree edges solid, the rest dashed (needs the basis for
/// the tree).
std::string cover_to_dot(const FreeBasis& B);

}  // namespace fpaut

#endif
