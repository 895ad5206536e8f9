#pragma once

// The finite-embeddability relation A <=fe B: translate search, exact
// decision on the periodic tier, bounded semi-decision with prefix
// certificates, proper embeddability, whole-set translate inclusion and
// the constructive B' (shift-spaced prefix copies) algorithm.
//
// Exactness on the periodic tier rests on one fact used throughout: for
// k >= t_B the leftward shift B-k depends only on k mod p_B, so the orbit
// {B-k : k in N} is the finite family {B-k : 0 <= k < t_B + p_B} and the
// orbit closure equals the orbit itself.

#include <cstdint>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "felab/natset.hpp"

namespace felab {

struct UniformShift { u64 k; };                       // A + k subseteq B
struct ClosureShift { u64 k; };                       // A subseteq B - k
struct PrefixWitnesses {
    std::vector<std::pair<u64, u64>> pairs;           // (n, k_n): (A cap n)+k_n subseteq B
};
using FeCertificate = std::variant<UniformShift, ClosureShift, PrefixWitnesses>;

// Refutation evidence: a finite F subseteq A such that F+k fails for every
// k in a provably exhaustive range.
struct ResidueProof {
    u64 shift_bound;                                  // representatives cover [0, shift_bound)
    std::vector<std::pair<u64, u64>> violations;      // (k representative, element of F with elem+k not in B)
};
struct BoundedDomain { u64 bound; };                  // B subseteq [0, bound); shifts beyond are vacuous
struct FeRefutation {
    NatSet finite_part;
    std::variant<ResidueProof, BoundedDomain> exhaustiveness;
};

struct HorizonRecord {
    u64 n_max = 0;
    u64 k_max = 0;
    std::string note;
};

struct FeVerdict {
    enum class Status { Embeds, Refuted, Unknown };
    Status status = Status::Unknown;
    std::optional<FeCertificate> certificate;
    std::optional<FeRefutation> refutation;
    std::optional<HorizonRecord> horizon;

    static FeVerdict embeds(FeCertificate c) {
        FeVerdict v;
        v.status = Status::Embeds;
        v.certificate = std::move(c);
        return v;
    }
    static FeVerdict refuted(FeRefutation r) {
        FeVerdict v;
        v.status = Status::Refuted;
        v.refutation = std::move(r);
        return v;
    }
    static FeVerdict unknown(HorizonRecord h) {
        FeVerdict v;
        v.status = Status::Unknown;
        v.horizon = std::move(h);
        return v;
    }

    bool embeds_p() const { return status == Status::Embeds; }
    bool refuted_p() const { return status == Status::Refuted; }
};

// ---------------------------------------------------------------------------
// Translate search (word-parallel)

// All k in [k_lo, k_hi) with F + k subseteq B, ascending.  B's window is
// materialized once; each candidate shift is tested by a masked AND of the
// shifted window (shift-and scan), not by per-element probing.
inline std::vector<u64> translate_witnesses(const NatSet& f, const NatSet& b,
                                            u64 k_lo, u64 k_hi) {
    if (k_hi < k_lo) throw std::invalid_argument("translate_witnesses: k_lo > k_hi");
    const std::vector<u64>& elems = f.finite_elements();
    if (elems.empty()) {
        std::vector<u64> all;
        for (u64 k = k_lo; k < k_hi; ++k) all.push_back(k);
        return all;
    }
    u64 maxf = elems.back();
    Window w = window(b, 0, k_hi + maxf);
    BitVec hits(k_hi, true);
    for (u64 e : elems) hits.and_shifted(w.bits, e);
    std::vector<std::size_t> pos = hits.set_positions();
    auto first = std::lower_bound(pos.begin(), pos.end(), k_lo);
    if constexpr (std::is_same_v<std::size_t, u64>) {
        if (first == pos.begin()) return pos;
    }
    return std::vector<u64>(first, pos.end());
}

inline NatSet witness_set(const NatSet& f, const NatSet& b, u64 horizon) {
    return NatSet::finite(translate_witnesses(f, b, 0, horizon));
}

// ---------------------------------------------------------------------------
// Exact decision (periodic tier)

inline FeVerdict fe_decide(const NatSet& a, const NatSet& b) {
    if (!a.decidable() || !b.decidable())
        throw TierError("fe_decide requires finite or eventually periodic arguments");
    if (a.is_empty()) return FeVerdict::embeds(ClosureShift{0});

    if (b.tier() == NatSet::Tier::Finite) {
        // Bounded right-hand side: every shift beyond max(B) is vacuously
        // refuted, so [0, max(B)+1] is exhaustive.
        u64 bound = b.is_empty() ? 1 : b.finite_elements().back() + 2;
        std::vector<u64> fw;
        for (u64 k = 0; k < bound; ++k) {
            Verdict3 sub = is_subset(a, shift_left(b, k));
            if (sub.is_true()) return FeVerdict::embeds(ClosureShift{k});
            fw.push_back(*sub.witness);
        }
        return FeVerdict::refuted(FeRefutation{NatSet::finite(fw), BoundedDomain{bound}});
    }

    u64 bound = b.threshold() + b.period();
    ResidueProof proof{bound, {}};
    std::vector<u64> fw;
    for (u64 k = 0; k < bound; ++k) {
        Verdict3 sub = is_subset(a, shift_left(b, k));
        if (sub.is_true()) return FeVerdict::embeds(ClosureShift{k});
        proof.violations.emplace_back(k, *sub.witness);
        fw.push_back(*sub.witness);
    }
    return FeVerdict::refuted(FeRefutation{NatSet::finite(fw), std::move(proof)});
}

// ---------------------------------------------------------------------------
// Bounded semi-decision (any tiers)

inline FeVerdict fe_bounded(const NatSet& a, const NatSet& b, u64 n_max, u64 k_max) {
    if (a.decidable() && b.decidable()) return fe_decide(a, b);

    PrefixWitnesses pw;
    for (u64 n = 1; n <= n_max; ++n) {
        Enumeration en = elements_below(a, n);
        if (!en.exhaustive)
            return FeVerdict::unknown({n, k_max, "prefix enumeration exhausted at " +
                                                     std::to_string(en.scanned_to)});
        NatSet f = NatSet::finite(en.elems);
        if (b.decidable()) {
            FeVerdict d = fe_decide(f, b);
            if (d.refuted_p()) return d;
            pw.pairs.emplace_back(n, std::get<ClosureShift>(*d.certificate).k);
            continue;
        }
        std::vector<u64> ws = translate_witnesses(f, b, 0, k_max);
        if (ws.empty())
            return FeVerdict::unknown({n, k_max,
                                       "no shift below k_max embeds the length-" +
                                           std::to_string(n) + " prefix"});
        pw.pairs.emplace_back(n, ws.front());
    }
    return FeVerdict::embeds(std::move(pw));
}

// ---------------------------------------------------------------------------
// Proper finite embeddability

// Embeds-with-infinitely-many-witnesses.  On the periodic tier a finite F
// has infinitely many witnesses iff it has one at k >= t_B (tail witnesses
// recur with period p_B); a compactness argument over the finitely many
// tail shift classes turns the per-F condition into a single uniform one.
struct ProperFeReport {
    FeVerdict fe;                       // the plain fe verdict
    Truth proper = Truth::Unknown;
    std::optional<u64> tail_witness;    // k >= t_B with A subseteq B-k
    std::optional<u64> uniform_shift;   // when fe holds but not properly
};

inline ProperFeReport proper_fe(const NatSet& a, const NatSet& b) {
    ProperFeReport r;
    r.fe = fe_decide(a, b);
    if (r.fe.refuted_p()) {
        r.proper = Truth::False;
        return r;
    }
    if (a.is_empty()) {
        r.proper = Truth::True;
        r.tail_witness = b.decidable() && b.infinite() ? b.threshold() : 0;
        return r;
    }
    if (b.tier() == NatSet::Tier::Finite) {
        // finitely many shifts can work at all
        r.proper = Truth::False;
        r.uniform_shift = std::get<ClosureShift>(*r.fe.certificate).k;
        return r;
    }
    u64 t = b.threshold(), p = b.period();
    for (u64 k = t; k < t + p; ++k) {
        if (is_subset(a, shift_left(b, k)).is_true()) {
            r.proper = Truth::True;
            r.tail_witness = k;
            return r;
        }
    }
    r.proper = Truth::False;
    r.uniform_shift = std::get<ClosureShift>(*r.fe.certificate).k;
    return r;
}

// ---------------------------------------------------------------------------
// Whole-set translate inclusion: least k with A + k subseteq B.

inline Verdict3 includes_translate(const NatSet& a, const NatSet& b,
                                   u64 horizon = kDefaultSubsetHorizon) {
    if (a.decidable() && b.decidable()) {
        u64 bound = b.tier() == NatSet::Tier::Finite
                        ? (b.is_empty() ? 1 : b.finite_elements().back() + 2)
                        : b.threshold() + b.period();
        if (a.is_empty()) return Verdict3::yes(0);
        for (u64 k = 0; k < bound; ++k)
            if (is_subset(a, shift_left(b, k)).is_true()) return Verdict3::yes(k);
        return Verdict3::no();
    }
    // Horizon search; True answers for finite A are exact, others are
    // labeled with the verified range.
    u64 k_cap = std::min<u64>(horizon, 1u << 12);
    for (u64 k = 0; k < k_cap; ++k) {
        Verdict3 sub = subset_at_horizon(a, shift_left(b, k), horizon);
        if (sub.is_true()) {
            Verdict3 v = Verdict3::yes(k, sub.note);
            return v;
        }
    }
    return Verdict3::unknown("no shift below " + std::to_string(k_cap) + " found");
}

// ---------------------------------------------------------------------------
// Constructive B'

// Greedy realization of the prefix-copy construction: pick the least
// k_n <= k_cap with k_n > k_j + j for all j < n and (A cap n) + k_n
// subseteq B; B' is the union of the shifted prefixes.  The spacing rule
// keeps the pieces disjoint, so A agrees with B'-k_n on [0, n).
struct BPrimeResult {
    NatSet bprime;                       // finite constructed portion
    std::vector<u64> shifts;             // k_1 < k_2 < ...
    u64 n_max = 0;                       // prefixes actually placed
    std::optional<std::pair<u64, u64>> exhausted;  // (n, k_cap) when search failed
};

inline BPrimeResult construct_bprime(const NatSet& a, const NatSet& b,
                                     u64 n_max, u64 k_cap) {
    BPrimeResult res;
    std::vector<u64> elems;
    u64 lower = 0;  // max over j of k_j + j, exclusive bound
    for (u64 n = 1; n <= n_max; ++n) {
        Enumeration en = elements_below(a, n);
        std::optional<u64> found;
        for (u64 k = lower; k <= k_cap; ++k) {
            bool ok = true;
            for (u64 e : en.elems)
                if (!b.contains(e + k)) { ok = false; break; }
            if (ok) { found = k; break; }
        }
        if (!found) {
            res.exhausted = {n, k_cap};
            break;
        }
        res.shifts.push_back(*found);
        res.n_max = n;
        for (u64 e : en.elems) elems.push_back(e + *found);
        lower = *found + n + 1;  // k_{n+1} > k_n + n; earlier constraints are weaker
    }
    res.bprime = NatSet::finite(std::move(elems));
    return res;
}

// ---------------------------------------------------------------------------
// Two-way query

struct FeEquivReport {
    FeVerdict forward;
    FeVerdict backward;
};

inline FeEquivReport fe_equiv(const NatSet& a, const NatSet& b,
                              u64 n_max = 32, u64 k_max = u64{1} << 20) {
    auto run = [&](const NatSet& x, const NatSet& y) {
        return x.decidable() && y.decidable() ? fe_decide(x, y)
                                              : fe_bounded(x, y, n_max, k_max);
    };
    return {run(a, b), run(b, a)};
}

// ---------------------------------------------------------------------------
// Independent certificate / refutation verification

inline bool verify_certificate(const NatSet& a, const NatSet& b, const FeCertificate& c) {
    if (const auto* u = std::get_if<UniformShift>(&c))
        return is_subset(a, shift_left(b, u->k)).is_true();
    if (const auto* s = std::get_if<ClosureShift>(&c))
        return is_subset(a, shift_left(b, s->k)).is_true();
    const auto& pw = std::get<PrefixWitnesses>(c);
    for (auto [n, k] : pw.pairs) {
        Enumeration en = elements_below(a, n);
        if (!en.exhaustive) return false;
        for (u64 e : en.elems)
            if (!b.contains(e + k)) return false;
    }
    return true;
}

inline bool verify_refutation(const NatSet& a, const NatSet& b, const FeRefutation& r) {
    const std::vector<u64>& f = r.finite_part.finite_elements();
    for (u64 e : f)
        if (!a.contains(e)) return false;
    auto fails_at = [&](u64 k) {
        for (u64 e : f)
            if (!b.contains(e + k)) return true;
        return false;
    };
    if (const auto* bd = std::get_if<BoundedDomain>(&r.exhaustiveness)) {
        if (f.empty()) return false;
        if (b.tier() != NatSet::Tier::Finite) return false;
        if (!b.is_empty() && bd->bound < b.finite_elements().back() + 2) return false;
        // beyond the bound every shift pushes all of F past max(B)
        for (u64 k = 0; k < bd->bound; ++k)
            if (!fails_at(k)) return false;
        return true;
    }
    const auto& rp = std::get<ResidueProof>(r.exhaustiveness);
    if (!b.decidable() || !b.infinite()) return false;
    if (rp.shift_bound != b.threshold() + b.period()) return false;
    std::vector<bool> covered(rp.shift_bound, false);
    for (auto [k, elem] : rp.violations) {
        if (k >= rp.shift_bound) return false;
        if (!a.contains(elem) || b.contains(elem + k)) return false;
        covered[k] = true;
    }
    for (bool c : covered)
        if (!c) return false;
    return true;
}

inline bool verify_fe_verdict(const NatSet& a, const NatSet& b, const FeVerdict& v) {
    if (v.status == FeVerdict::Status::Embeds) return verify_certificate(a, b, *v.certificate);
    if (v.status == FeVerdict::Status::Refuted) return verify_refutation(a, b, *v.refutation);
    return true;
}

}  // namespace felab
