#ifndef FPAUT_EMBEDDING_HPP
#define FPAUT_EMBEDDING_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpaut/automorphism.hpp"
#include "fpaut/covering.hpp"
#include "fpaut/group.hpp"
#include "fpaut/relations.hpp"
#include "fpaut/restriction.hpp"

namespace fpaut {

/// u k + t r = 1 with the smallest non-negative u.  Throws when
/// gcd(r, k) != 1 ("exponent not coprime to n-1" for k = n-1).
std::pair<long long, long long> bezout(long long r, long long k);

/// Bezout data u_i(n-1) + t_i r_i = 1 per position.
struct LiftParams {
    std::vector<std::pair<long long, long long>> ut;  // per position 1..n
    long long u_at(int pos) const { return ut.at(static_cast<std::size_t>(pos) - 1).first; }
    long long t_at(int pos) const { return ut.at(static_cast<std::size_t>(pos) - 1).second; }
};

LiftParams make_lift_params(const FreeProduct& G, const SubgroupSpec& N);

/// ad(conj) o base: factor automorphisms, permutations and right
/// transvections keep the standard lift (conj = 1); Dehn twists get
/// gamma^{u}, left transvections gamma^{-u}, reflections a_i^{u}.
struct LiftedGenerator {
    Word conj;
    GenAut base;
};

LiftedGenerator corrected_lift(const FreeProduct& G, const GenAut& g,
                               const LiftParams& P);

/// A product of lifted generators, flattened to ad(conj) o base with the
/// conjugator tracked symbolically.
struct LiftedAut {
    Word conj;
    AutWord base;
};

LiftedAut lifted_identity();
LiftedAut lift_word(const FreeProduct& G, const AutWord& A, const LiftParams& P);
LiftedAut compose_lifted(const FreeProduct& G, const LiftedAut& L, const LiftedAut& R);
LiftedAut inverse_lifted(const FreeProduct& G, const LiftedAut& L);
Word apply_lifted(const FreeProduct& G, const LiftedAut& L, const Word& w);
GeneratorImages images_lifted(const FreeProduct& G, const LiftedAut& L);

/// The witness the splitting computation predicts for a relation instance
/// under corrected lifts; present for families 0, 4, 5, 13, 19, 21.
std::optional<Word> splitting_predicted_conjugator(const FreeProduct& G,
                                                   const RelationInstance& inst,
                                                   const LiftParams& P);

struct SplittingItem {
    std::string family;
    std::string params;
    bool passed = false;               // witness found and in N
    std::optional<Word> conjugator;
    std::optional<bool> matches_predicted;
};

struct SplittingReport {
    std::vector<SplittingItem> items;
    long long failures = 0;
    long long predicted_mismatches = 0;
    bool all_passed() const { return failures == 0 && predicted_mismatches == 0; }
};

/// Substitutes corrected lifts into every relation instance and checks
/// equality modulo Inn(N); where the computation pins an explicit witness,
/// the found one must induce the same inner automorphism.
SplittingReport verify_splitting(const FreeProduct& G, const SubgroupSpec& N,
                                 const std::vector<RelationInstance>& instances);

/// Image of one generator of Out(G) in Aut(F_m): the corrected lift
/// restricted to the basis, certified invertible.
FreeGroupAut embed_generator(const FreeProduct& G, const SubgroupSpec& N,
                             const GenAut& g, const FreeBasis& B,
                             const LiftParams& P);

struct WnReport {
    int n = 0;
    long long expected_rank = 0;
    long long rank = 0;
    bool rank_ok = false;
    SplittingReport splitting;
    std::vector<std::pair<std::string, FreeGroupAut>> generator_images;
    bool all_passed() const;
};

/// The universal Coxeter pipeline: W_n with N = G'G^2 (n even; odd n is
/// rejected since gcd(2, n-1) fails), rank 2^{n-1}(n-2)+1, full splitting
/// verification, embedded generator images.
WnReport out_wn_report(int n);

struct W3Report {
    std::vector<std::pair<std::string, FreeGroupAut>> generator_images;  // f(x_i)
    bool squares_ok = false;         // f(x_i)^2 = 1 exactly
    bool equivariance_ok = false;    // f(s) f(x_i) f(s)^-1 = f(x_{s(i)}) exactly
    bool out0_relations_ok = false;  // alpha_12 = alpha_13 etc. mod Inn(W_3)
    long long probes_checked = 0;
    long long probe_violations = 0;  // nontrivial (w, s) mapping to an inner aut
    bool all_passed() const {
        return squares_ok && equivariance_ok && out0_relations_ok && probe_violations == 0;
    }
};

/// The hand-built embedding W_3 x| S_3 -> Out(F_4): x_i -> alpha_i4 tau_i,
/// s -> omega_s, with the bounded non-innerness probe up to |w| <= max_len.
W3Report w3_into_out_f4(int max_len = 4);

}  // namespace fpaut

#endif
