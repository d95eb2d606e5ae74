#include "fpaut/covering.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace fpaut {

namespace {

long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

QuotientGroup::QuotientGroup(const FreeProduct& G, const SubgroupSpec& N) {
    G.check_subgroup_spec(N);
    for (int pos = 1; pos <= G.positions(); ++pos) {
        offsets_.push_back(moduli_.size());
        if (G.is_free_position(pos)) {
            moduli_.push_back(N.exponent_at(pos));
            sizes_.push_back(1);
        } else {
            const FactorSpec& f = G.factor(pos);
            for (long long m : f.invariant_factors)
                moduli_.push_back(std::gcd(N.exponent_at(pos), m));
            sizes_.push_back(f.num_generators());
        }
    }
    for (long long m : moduli_) order_ *= m;
}

std::size_t QuotientGroup::block_offset(int pos) const {
    return offsets_.at(static_cast<std::size_t>(pos) - 1);
}

std::size_t QuotientGroup::block_size(int pos) const {
    return sizes_.at(static_cast<std::size_t>(pos) - 1);
}

std::vector<long long> QuotientGroup::add(const std::vector<long long>& x,
                                          const std::vector<long long>& y) const {
    std::vector<long long> z(moduli_.size());
    for (std::size_t c = 0; c < moduli_.size(); ++c)
        z[c] = mod_reduce(x[c] + y[c], moduli_[c]);
    return z;
}

std::vector<long long> QuotientGroup::negate(const std::vector<long long>& x) const {
    std::vector<long long> z(moduli_.size());
    for (std::size_t c = 0; c < moduli_.size(); ++c) z[c] = mod_reduce(-x[c], moduli_[c]);
    return z;
}

std::vector<long long> QuotientGroup::project_syllable(const FreeProduct& /*G*/,
                                                       const Syllable& s) const {
    std::vector<long long> z = zero();
    std::size_t off = block_offset(s.pos);
    for (std::size_t k = 0; k < s.payload.size(); ++k)
        z[off + k] = mod_reduce(s.payload[k], moduli_[off + k]);
    return z;
}

std::vector<long long> QuotientGroup::project(const FreeProduct& G, const Word& w) const {
    std::vector<long long> z = zero();
    for (const Syllable& s : w.syllables) z = add(z, project_syllable(G, s));
    return z;
}

long long QuotientGroup::rank_of(const std::vector<long long>& q) const {
    long long r = 0;
    for (std::size_t c = 0; c < moduli_.size(); ++c) r = r * moduli_[c] + q[c];
    return r;
}

std::vector<long long> QuotientGroup::element_at(long long rank) const {
    std::vector<long long> q(moduli_.size(), 0);
    for (std::size_t c = moduli_.size(); c-- > 0;) {
        q[c] = rank % moduli_[c];
        rank /= moduli_[c];
    }
    return q;
}

namespace {

std::string vertex_name(const CoverVertex& v) {
    std::ostringstream os;
    os << (v.kind == 0 ? "h" : "f" + std::to_string(v.kind)) << '(';
    for (std::size_t c = 0; c < v.q.size(); ++c) {
        if (c) os << ',';
        os << v.q[c];
    }
    os << ')';
    return os.str();
}

}  // namespace

CoverGraph::CoverGraph(const FreeProduct& G, const SubgroupSpec& N)
    : G_(G), N_(N), Q_(G, N) {
    long long qn = Q_.order();

    // Hub fibre first, then the factor fibres, each in lexicographic order.
    for (long long r = 0; r < qn; ++r) {
        CoverVertex v{0, Q_.element_at(r), {}};
        v.name = vertex_name(v);
        vertices_.push_back(std::move(v));
    }
    for (int pos = G_.free_rank() + 1; pos <= G_.positions(); ++pos) {
        factor_fiber_offset_.push_back(static_cast<long long>(vertices_.size()));
        std::size_t off = Q_.block_offset(pos), sz = Q_.block_size(pos);
        for (long long r = 0; r < qn; ++r) {
            std::vector<long long> q = Q_.element_at(r);
            bool zeroed = true;
            for (std::size_t k = 0; k < sz && zeroed; ++k) zeroed = (q[off + k] == 0);
            if (!zeroed) continue;  // fibre = Q with the i-block zeroed
            CoverVertex v{pos, std::move(q), {}};
            v.name = vertex_name(v);
            vertices_.push_back(std::move(v));
        }
    }

    for (int pos = 1; pos <= G_.positions(); ++pos)
        for (long long r = 0; r < qn; ++r) {
            std::vector<long long> q = Q_.element_at(r);
            CoverEdge e;
            e.pos = pos;
            e.q = q;
            if (G_.is_free_position(pos)) {
                e.loop = true;
                std::vector<long long> unit = Q_.zero();
                unit[Q_.block_offset(pos)] = mod_reduce(1, Q_.moduli()[Q_.block_offset(pos)]);
                int a = hub_vertex(q), b = hub_vertex(Q_.add(q, unit));
                e.src = std::min(a, b);  // oriented from the smaller endpoint
                e.dst = std::max(a, b);
            } else {
                e.loop = false;
                e.src = hub_vertex(q);
                e.dst = factor_vertex(pos, q);
            }
            edges_.push_back(std::move(e));
        }

    incident_.assign(vertices_.size(), {});
    for (std::size_t id = 0; id < edges_.size(); ++id) {
        incident_[static_cast<std::size_t>(edges_[id].src)].push_back(static_cast<int>(id));
        if (edges_[id].dst != edges_[id].src)
            incident_[static_cast<std::size_t>(edges_[id].dst)].push_back(static_cast<int>(id));
    }
}

int CoverGraph::hub_vertex(const std::vector<long long>& q) const {
    return static_cast<int>(Q_.rank_of(q));
}

int CoverGraph::factor_vertex(int pos, const std::vector<long long>& q) const {
    // rank within the fibre = lexicographic rank with the i-block removed
    std::size_t off = Q_.block_offset(pos), sz = Q_.block_size(pos);
    long long r = 0;
    for (std::size_t c = 0; c < Q_.moduli().size(); ++c) {
        if (c >= off && c < off + sz) continue;
        r = r * Q_.moduli()[c] + q[c];
    }
    return static_cast<int>(
        factor_fiber_offset_[static_cast<std::size_t>(pos - G_.free_rank() - 1)] + r);
}

int CoverGraph::edge_id(int pos, const std::vector<long long>& q) const {
    return static_cast<int>((pos - 1) * Q_.order() + Q_.rank_of(q));
}

bool is_free_cover(const FreeProduct& G, const SubgroupSpec& N) {
    G.check_subgroup_spec(N);
    for (int pos = G.free_rank() + 1; pos <= G.positions(); ++pos)
        for (long long m : G.factor(pos).invariant_factors)
            if (N.exponent_at(pos) % m != 0) return false;
    return true;
}

bool is_contractible_cover(const FreeProduct& G, const SubgroupSpec& N) {
    G.check_subgroup_spec(N);
    // N <= Stab(v) forces N inside one conjugate of one factor.  N always
    // contains G', which for two or more positions contains cyclically
    // reduced commutators of length four; with free letters present N also
    // contains powers of them.  What remains: a lone finite factor (where
    // N = G_1^{r_1} fixes the factor vertex) or the empty product.
    return G.positions() == 0 || (G.free_rank() == 0 && G.positions() == 1);
}

long long cover_rank(const CoverGraph& C) {
    if (!is_free_cover(C.group(), C.subgroup()))
        throw std::domain_error("cover has non-trivial vertex groups");
    return static_cast<long long>(C.edges().size()) -
           static_cast<long long>(C.vertices().size()) + 1;
}

FreeBasis::FreeBasis(const CoverGraph& C) : graph_(C) {
    const FreeProduct& G = graph_.group();
    const QuotientGroup& Q = graph_.quotient();
    if (!is_free_cover(G, graph_.subgroup()))
        throw std::domain_error("cover has non-trivial vertex groups");

    const auto& edges = graph_.edges();
    const auto& vertices = graph_.vertices();
    std::vector<bool> visited(vertices.size(), false);
    std::vector<bool> tree(edges.size(), false);
    rep_.assign(vertices.size(), G.identity());

    // Pull an element of the factor at pos realising a block-supported
    // difference in Q; in a free cover the block moduli equal the invariant
    // factors, so the lift is canonical.
    auto block_lift = [&](int pos, const std::vector<long long>& diff) {
        std::size_t off = Q.block_offset(pos), sz = Q.block_size(pos);
        std::vector<long long> coords(diff.begin() + static_cast<long>(off),
                                      diff.begin() + static_cast<long>(off + sz));
        return G.factor_element(pos, std::move(coords));
    };

    std::queue<int> bfs;
    visited[static_cast<std::size_t>(graph_.base_vertex())] = true;
    bfs.push(graph_.base_vertex());
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int id : graph_.incident_edges()[static_cast<std::size_t>(u)]) {
            const CoverEdge& e = edges[static_cast<std::size_t>(id)];
            int v = e.src == u ? e.dst : e.src;
            if (v == u || visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = true;
            tree[static_cast<std::size_t>(id)] = true;
            const CoverVertex& vu = vertices[static_cast<std::size_t>(u)];
            const CoverVertex& vv = vertices[static_cast<std::size_t>(v)];
            if (e.loop) {
                // hub-to-hub step; spells a_pos when leaving coordinate e.q
                long long sign = (vu.q == e.q) ? 1 : -1;
                rep_[static_cast<std::size_t>(v)] =
                    G.multiply(rep_[static_cast<std::size_t>(u)], G.free_letter(e.pos, sign));
            } else if (vv.kind != 0) {
                // climbing hub -> factor vertex: same coset representative
                rep_[static_cast<std::size_t>(v)] = rep_[static_cast<std::size_t>(u)];
            } else {
                // descending factor -> hub(q'): append the factor element
                // moving the representative's coordinate to q'
                const Word& ru = rep_[static_cast<std::size_t>(u)];
                std::vector<long long> diff = Q.add(vv.q, Q.negate(Q.project(G, ru)));
                rep_[static_cast<std::size_t>(v)] = G.multiply(ru, block_lift(e.pos, diff));
            }
            bfs.push(v);
        }
    }
    for (bool b : visited)
        if (!b) throw std::logic_error("cover graph is not connected");

    letter_of_edge_.assign(edges.size(), 0);
    for (std::size_t id = 0; id < edges.size(); ++id) {
        if (tree[id]) continue;
        const CoverEdge& e = edges[id];
        const Word& rs = rep_[static_cast<std::size_t>(e.src)];
        const Word& rd = rep_[static_cast<std::size_t>(e.dst)];
        Word spelled;
        if (e.loop) {
            const CoverVertex& vs = graph_.vertices()[static_cast<std::size_t>(e.src)];
            spelled = G.free_letter(e.pos, vs.q == e.q ? 1 : -1);
        } else {
            std::vector<long long> diff = Q.add(Q.project(G, rd), Q.negate(Q.project(G, rs)));
            spelled = block_lift(e.pos, diff);
        }
        non_tree_edges_.push_back(static_cast<int>(id));
        basis_words_.push_back(G.multiply(G.multiply(rs, spelled), G.invert(rd)));
        letter_of_edge_[id] = static_cast<int>(basis_words_.size());
    }
}

std::vector<int> free_reduce(std::vector<int> letters) {
    std::vector<int> out;
    for (int l : letters) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

std::vector<int> FreeBasis::rewrite(const Word& w) const {
    const FreeProduct& G = graph_.group();
    const QuotientGroup& Q = graph_.quotient();
    G.check_word(w);
    if (!G.in_subgroup(w, graph_.subgroup()))
        throw std::invalid_argument("element not in subgroup");

    std::vector<int> letters;
    std::vector<long long> q = Q.zero();
    auto emit = [&](int edge_id, int dir) {
        int letter = letter_of_edge_[static_cast<std::size_t>(edge_id)];
        if (letter != 0) letters.push_back(dir * letter);
    };
    for (const Syllable& s : w.syllables) {
        if (G.is_free_position(s.pos)) {
            std::vector<long long> unit = Q.zero();
            std::size_t off = Q.block_offset(s.pos);
            unit[off] = mod_reduce(1, Q.moduli()[off]);
            long long e = s.payload[0];
            for (long long step = 0; step < (e > 0 ? e : -e); ++step) {
                if (e > 0) {
                    int id = graph_.edge_id(s.pos, q);
                    const CoverEdge& edge = graph_.edges()[static_cast<std::size_t>(id)];
                    const CoverVertex& vs = graph_.vertices()[static_cast<std::size_t>(edge.src)];
                    emit(id, vs.q == q ? 1 : -1);  // spelling direction vs orientation
                    q = Q.add(q, unit);
                } else {
                    std::vector<long long> prev = Q.add(q, Q.negate(unit));
                    int id = graph_.edge_id(s.pos, prev);
                    const CoverEdge& edge = graph_.edges()[static_cast<std::size_t>(id)];
                    const CoverVertex& vs = graph_.vertices()[static_cast<std::size_t>(edge.src)];
                    emit(id, vs.q == prev ? -1 : 1);
                    q = prev;
                }
            }
        } else {
            // hub -> factor vertex -> hub: two edge crossings
            std::vector<long long> next = Q.add(q, Q.project_syllable(G, s));
            emit(graph_.edge_id(s.pos, q), 1);
            emit(graph_.edge_id(s.pos, next), -1);
            q = next;
        }
    }
    if (q != Q.zero()) throw std::logic_error("walk did not close up");
    return free_reduce(std::move(letters));
}

Word FreeBasis::evaluate(const std::vector<int>& letters) const {
    const FreeProduct& G = graph_.group();
    Word acc = G.identity();
    for (int l : letters) {
        if (l == 0 || static_cast<std::size_t>(l > 0 ? l : -l) > basis_words_.size())
            throw std::invalid_argument("basis letter out of range");
        const Word& b = basis_words_[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
        acc = G.multiply(acc, l > 0 ? b : G.invert(b));
    }
    return acc;
}

DeckAction deck_action(const CoverGraph& C, const std::vector<long long>& q) {
    const QuotientGroup& Q = C.quotient();
    DeckAction act;
    act.vertex_map.resize(C.vertices().size());
    act.edge_map.resize(C.edges().size());
    for (std::size_t v = 0; v < C.vertices().size(); ++v) {
        const CoverVertex& vert = C.vertices()[v];
        std::vector<long long> moved = Q.add(vert.q, q);
        if (vert.kind == 0) {
            act.vertex_map[v] = C.hub_vertex(moved);
        } else {
            // zero the factor block again; translation acts on the quotient
            std::size_t off = Q.block_offset(vert.kind), sz = Q.block_size(vert.kind);
            for (std::size_t k = 0; k < sz; ++k) moved[off + k] = 0;
            act.vertex_map[v] = C.factor_vertex(vert.kind, moved);
        }
    }
    for (std::size_t e = 0; e < C.edges().size(); ++e)
        act.edge_map[e] = C.edge_id(C.edges()[e].pos, Q.add(C.edges()[e].q, q));
    return act;
}

std::string cover_to_dot(const FreeBasis& B) {
    const CoverGraph& C = B.graph();
    std::ostringstream os;
    os << "graph cover {\n";
    for (const CoverVertex& v : C.vertices())
        os << "  \"" << v.name << "\""
           << (v.kind == 0 ? "" : " [shape=box]") << ";\n";
    for (std::size_t id = 0; id < C.edges().size(); ++id) {
        const CoverEdge& e = C.edges()[id];
        os << "  \"" << C.vertices()[static_cast<std::size_t>(e.src)].name << "\" -- \""
           << C.vertices()[static_cast<std::size_t>(e.dst)].name << "\" [label=\"";
        if (e.loop)
            os << 'a' << e.pos;
        else
            os << 'G' << e.pos;
        int letter = B.basis_letter(static_cast<int>(id));
        if (letter != 0) os << " b" << letter;
        os << "\"";
        if (letter != 0) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace fpaut
