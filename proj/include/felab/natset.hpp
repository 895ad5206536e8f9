#pragma once

// Exact representations of subsets of N in three tiers:
//
//   Finite             sorted element list
//   Periodic           transient bits over [0,t) followed by a repeating
//                      period mask; the fully decidable tier
//   Generator          membership predicate plus an optional monotone
//                      element enumerator; only horizon-bounded answers
//
// Periodic values are kept in canonical form (minimal period, minimal
// threshold); a periodic value whose tail mask is all zeros collapses to
// Finite.  Equality of decidable sets is structural on canonical forms.

#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "felab/bitvec.hpp"

namespace felab {

using u64 = std::uint64_t;

class TierError : public std::runtime_error {
public:
    explicit TierError(const std::string& what) : std::runtime_error(what) {}
};

class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

class FipViolation : public std::runtime_error {
public:
    explicit FipViolation(const std::string& what) : std::runtime_error(what) {}
};

enum class Truth { True, False, Unknown };

inline const char* truth_name(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        default: return "unknown";
    }
}

// Three-valued verdict with optional numeric witness and a free-form note
// (horizon descriptions, "verified below N" labels).
struct Verdict3 {
    Truth truth = Truth::Unknown;
    std::optional<u64> witness;
    std::string note;

    static Verdict3 yes(std::optional<u64> w = std::nullopt, std::string n = {}) {
        return {Truth::True, w, std::move(n)};
    }
    static Verdict3 no(std::optional<u64> w = std::nullopt, std::string n = {}) {
        return {Truth::False, w, std::move(n)};
    }
    static Verdict3 unknown(std::string n) { return {Truth::Unknown, std::nullopt, std::move(n)}; }

    bool is_true() const { return truth == Truth::True; }
    bool is_false() const { return truth == Truth::False; }
    bool is_unknown() const { return truth == Truth::Unknown; }
};

struct GenRep {
    std::string name;
    std::function<bool(u64)> member;
    // nth(i) = i-th element in increasing order, when a closed-form or
    // streamable enumeration exists.  May be empty.
    std::function<u64(u64)> nth;
};

struct Window {
    u64 lo = 0;
    u64 hi = 0;
    BitVec bits;  // bits[i] = membership(lo + i)
};

class NatSet {
public:
    enum class Tier { Finite, Periodic, Generator };

    NatSet() = default;  // the empty set

    static NatSet finite(std::vector<u64> elems) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        NatSet s;
        s.tier_ = Tier::Finite;
        s.elems_ = std::move(elems);
        return s;
    }

    // Canonicalizing constructor: minimal tail period, minimal threshold,
    // all-zero tail collapsed to Finite.
    static NatSet periodic(const BitVec& transient, const BitVec& period_mask) {
        if (period_mask.empty())
            throw std::invalid_argument("NatSet::periodic: period mask must be nonempty");
        u64 p0 = period_mask.size();
        // Minimal period of the infinite tail divides p0.
        u64 d = p0;
        for (u64 cand = 1; cand <= p0; ++cand) {
            if (p0 % cand) continue;
            bool ok = true;
            for (u64 i = 0; i < p0 && ok; ++i)
                if (period_mask.get(i) != period_mask.get((i + cand) % p0)) ok = false;
            if (ok) { d = cand; break; }
        }
        u64 t = transient.size();
        // Absolute-phase view: value at x >= t is abs[x mod d].
        auto abs_bit = [&](u64 r) {
            u64 j = (r + d - (t % d)) % d;
            return period_mask.get(j % p0);
        };
        std::vector<bool> abs(d);
        for (u64 r = 0; r < d; ++r) abs[r] = abs_bit(r);
        while (t > 0 && transient.get(t - 1) == abs[(t - 1) % d]) --t;

        BitVec mask(d);
        for (u64 j = 0; j < d; ++j) mask.set(j, abs[(t + j) % d]);
        if (!mask.any()) {
            std::vector<u64> elems;
            for (u64 i = 0; i < t; ++i)
                if (transient.get(i)) elems.push_back(i);
            return finite(std::move(elems));
        }
        BitVec tr(t);
        for (u64 i = 0; i < t; ++i) tr.set(i, transient.get(i));
        NatSet s;
        s.tier_ = Tier::Periodic;
        s.transient_ = std::move(tr);
        s.mask_ = std::move(mask);
        return s;
    }

    static NatSet generator(GenRep rep) {
        NatSet s;
        s.tier_ = Tier::Generator;
        s.gen_ = std::make_shared<GenRep>(std::move(rep));
        return s;
    }

    static NatSet empty() { return finite({}); }

    static NatSet naturals() { return periodic(BitVec(), BitVec::from_string("1")); }

    // {a, a+d, a+2d, ...}
    static NatSet arithmetic(u64 a, u64 d) {
        if (d == 0) return finite({a});
        BitVec tr(a);
        BitVec mask(d);
        mask.set(0, true);
        return periodic(tr, mask);
    }

    // [lo, hi)
    static NatSet interval(u64 lo, u64 hi) {
        std::vector<u64> e;
        for (u64 x = lo; x < hi; ++x) e.push_back(x);
        return finite(std::move(e));
    }

    Tier tier() const { return tier_; }
    bool decidable() const { return tier_ != Tier::Generator; }

    bool contains(u64 x) const {
        switch (tier_) {
            case Tier::Finite:
                return std::binary_search(elems_.begin(), elems_.end(), x);
            case Tier::Periodic:
                return x < transient_.size() ? transient_.get(x)
                                             : mask_.get((x - transient_.size()) % mask_.size());
            default:
                return gen_->member(x);
        }
    }

    bool is_empty() const { return tier_ == Tier::Finite && elems_.empty(); }

    // Decidable tiers only: infinite iff Periodic (canonical form).
    bool infinite() const {
        if (!decidable()) throw TierError("NatSet::infinite: generator tier");
        return tier_ == Tier::Periodic;
    }

    const std::vector<u64>& finite_elements() const {
        if (tier_ != Tier::Finite) throw TierError("finite_elements: not a finite set");
        return elems_;
    }

    // Canonical periodic parameters; Finite sets are viewed as threshold
    // max+1 with an all-zero period of length 1.
    u64 threshold() const {
        if (tier_ == Tier::Finite) return elems_.empty() ? 0 : elems_.back() + 1;
        if (tier_ == Tier::Periodic) return transient_.size();
        throw TierError("threshold: generator tier");
    }

    u64 period() const {
        if (tier_ == Tier::Finite) return 1;
        if (tier_ == Tier::Periodic) return mask_.size();
        throw TierError("period: generator tier");
    }

    const BitVec& period_mask() const {
        if (tier_ != Tier::Periodic) throw TierError("period_mask: not periodic tier");
        return mask_;
    }

    const BitVec& transient_bits() const {
        if (tier_ != Tier::Periodic) throw TierError("transient_bits: not periodic tier");
        return transient_;
    }

    const GenRep& gen() const {
        if (tier_ != Tier::Generator) throw TierError("gen: not generator tier");
        return *gen_;
    }

    std::string describe() const;

    // Structural equality of canonical forms (decidable tiers); generator
    // values compare by identity of their representation object.
    friend bool operator==(const NatSet& a, const NatSet& b) {
        if (a.tier_ != b.tier_) return false;
        switch (a.tier_) {
            case Tier::Finite: return a.elems_ == b.elems_;
            case Tier::Periodic: return a.transient_ == b.transient_ && a.mask_ == b.mask_;
            default: return a.gen_ == b.gen_;
        }
    }

private:
    Tier tier_ = Tier::Finite;
    std::vector<u64> elems_;
    BitVec transient_;
    BitVec mask_;
    std::shared_ptr<GenRep> gen_;
};

inline bool member(const NatSet& s, u64 x) { return s.contains(x); }

// ---------------------------------------------------------------------------
// Internal periodic view shared by the exact algorithms.

namespace detail {

struct EpView {
    u64 t;
    u64 p;
    const NatSet* s;
    bool bit(u64 x) const { return s->contains(x); }
};

inline EpView ep_view(const NatSet& s) {
    if (!s.decidable()) throw TierError("ep_view: generator tier operand");
    return {s.threshold(), s.period(), &s};
}

inline u64 lcm64(u64 a, u64 b) { return a / std::gcd(a, b) * b; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Windows and enumeration

inline Window window(const NatSet& s, u64 lo, u64 hi) {
    if (hi < lo) throw std::invalid_argument("window: hi < lo");
    Window w{lo, hi, BitVec(hi - lo)};
    if (s.tier() == NatSet::Tier::Finite) {
        const std::vector<u64>& e = s.finite_elements();
        for (auto it = std::lower_bound(e.begin(), e.end(), lo);
             it != e.end() && *it < hi; ++it)
            w.bits.set(*it - lo, true);
        return w;
    }
    if (s.tier() == NatSet::Tier::Periodic) {
        // stride-fill: one pass per set residue avoids a modulo per position
        const BitVec& tr = s.transient_bits();
        const BitVec& mask = s.period_mask();
        u64 t = tr.size(), p = mask.size();
        for (u64 x = lo; x < hi && x < t; ++x)
            if (tr.get(x)) w.bits.set(x - lo, true);
        u64 start = std::max(lo, t);
        if (mask.count() == p) {  // cofinite: fill whole words
            if (start < hi) w.bits.set_range(start - lo, hi - lo);
            return w;
        }
        for (u64 r = 0; r < p; ++r) {
            if (!mask.get(r)) continue;
            u64 x = t + r;
            if (x < start) x += (start - x + p - 1) / p * p;
            for (; x < hi; x += p) w.bits.set(x - lo, true);
        }
        return w;
    }
    for (u64 x = lo; x < hi; ++x)
        if (s.contains(x)) w.bits.set(x - lo, true);
    return w;
}

// Elements of s below `bound`, at most `cap` of them.  Generator sets
// without an enumerator are scanned by membership, capped at `scan_limit`
// probes; the returned `exhaustive` flag records whether the listing is
// complete for [0, bound).
struct Enumeration {
    std::vector<u64> elems;
    bool exhaustive = true;
    u64 scanned_to = 0;
};

inline Enumeration elements_below(const NatSet& s, u64 bound,
                                  std::size_t cap = static_cast<std::size_t>(-1),
                                  u64 scan_limit = u64{1} << 22) {
    Enumeration out;
    if (s.tier() == NatSet::Tier::Finite) {
        for (u64 e : s.finite_elements()) {
            if (e >= bound) break;
            if (out.elems.size() >= cap) { out.exhaustive = false; break; }
            out.elems.push_back(e);
        }
        out.scanned_to = bound;
        return out;
    }
    if (s.tier() == NatSet::Tier::Periodic) {
        for (u64 x = 0; x < bound; ++x) {
            if (s.contains(x)) {
                if (out.elems.size() >= cap) { out.exhaustive = false; out.scanned_to = x; return out; }
                out.elems.push_back(x);
            }
        }
        out.scanned_to = bound;
        return out;
    }
    const GenRep& g = s.gen();
    if (g.nth) {
        for (u64 i = 0;; ++i) {
            u64 e = g.nth(i);
            if (e >= bound) break;
            if (out.elems.size() >= cap) { out.exhaustive = false; out.scanned_to = e; return out; }
            out.elems.push_back(e);
        }
        out.scanned_to = bound;
        return out;
    }
    u64 lim = std::min(bound, scan_limit);
    for (u64 x = 0; x < lim; ++x) {
        if (g.member(x)) {
            if (out.elems.size() >= cap) { out.exhaustive = false; out.scanned_to = x; return out; }
            out.elems.push_back(x);
        }
    }
    out.scanned_to = lim;
    out.exhaustive = lim >= bound;
    return out;
}

// ---------------------------------------------------------------------------
// Shifts

NatSet shift_right(const NatSet& s, u64 k);
NatSet shift_left(const NatSet& s, u64 k);

inline NatSet shift_right(const NatSet& s, u64 k) {
    if (k == 0) return s;
    switch (s.tier()) {
        case NatSet::Tier::Finite: {
            std::vector<u64> e;
            for (u64 x : s.finite_elements()) e.push_back(x + k);
            return NatSet::finite(std::move(e));
        }
        case NatSet::Tier::Periodic: {
            u64 t = s.threshold(), p = s.period();
            BitVec tr(t + k);
            for (u64 i = 0; i < t; ++i) tr.set(i + k, s.contains(i));
            BitVec mask(p);
            for (u64 j = 0; j < p; ++j) mask.set(j, s.contains(t + j));
            return NatSet::periodic(tr, mask);
        }
        default: {
            NatSet base = s;
            GenRep g;
            g.name = "(" + s.gen().name + ">>" + std::to_string(k) + ")";
            g.member = [base, k](u64 x) { return x >= k && base.contains(x - k); };
            if (s.gen().nth) {
                auto nth = s.gen().nth;
                g.nth = [nth, k](u64 i) { return nth(i) + k; };
            }
            return NatSet::generator(std::move(g));
        }
    }
}

inline NatSet shift_left(const NatSet& s, u64 k) {
    if (k == 0) return s;
    switch (s.tier()) {
        case NatSet::Tier::Finite: {
            std::vector<u64> e;
            for (u64 x : s.finite_elements())
                if (x >= k) e.push_back(x - k);
            return NatSet::finite(std::move(e));
        }
        case NatSet::Tier::Periodic: {
            u64 t = s.threshold(), p = s.period();
            u64 nt = t > k ? t - k : 0;
            BitVec tr(nt);
            for (u64 i = 0; i < nt; ++i) tr.set(i, s.contains(i + k));
            BitVec mask(p);
            for (u64 j = 0; j < p; ++j) mask.set(j, s.contains(nt + j + k));
            return NatSet::periodic(tr, mask);
        }
        default: {
            NatSet base = s;
            GenRep g;
            g.name = "(" + s.gen().name + "<<" + std::to_string(k) + ")";
            g.member = [base, k](u64 x) { return base.contains(x + k); };
            if (s.gen().nth) {
                auto nth = s.gen().nth;
                g.nth = [nth, k](u64 i) {
                    // skip elements below k, then shift down
                    u64 idx = 0;
                    while (nth(idx) < k) ++idx;
                    return nth(idx + i) - k;
                };
            }
            return NatSet::generator(std::move(g));
        }
    }
}

// ---------------------------------------------------------------------------
// Boolean operations

namespace detail {

template <typename F>
NatSet pointwise(const NatSet& a, const NatSet& b, F&& f) {
    EpView va = ep_view(a), vb = ep_view(b);
    u64 t = std::max(va.t, vb.t);
    u64 p = lcm64(va.p, vb.p);
    BitVec tr(t);
    for (u64 i = 0; i < t; ++i) tr.set(i, f(a.contains(i), b.contains(i)));
    BitVec mask(p);
    for (u64 j = 0; j < p; ++j) mask.set(j, f(a.contains(t + j), b.contains(t + j)));
    return NatSet::periodic(tr, mask);
}

inline std::string set_name(const NatSet& s) {
    return s.tier() == NatSet::Tier::Generator ? s.gen().name : s.describe();
}

template <typename F>
NatSet gen_wrap(const NatSet& a, const NatSet& b, const char* op, F&& f) {
    NatSet ca = a, cb = b;
    GenRep g;
    g.name = "(" + set_name(a) + op + set_name(b) + ")";
    g.member = [ca, cb, f](u64 x) { return f(ca.contains(x), cb.contains(x)); };
    return NatSet::generator(std::move(g));
}

}  // namespace detail

inline NatSet set_intersect(const NatSet& a, const NatSet& b) {
    if (a.tier() == NatSet::Tier::Finite) {
        std::vector<u64> e;
        for (u64 x : a.finite_elements())
            if (b.contains(x)) e.push_back(x);
        return NatSet::finite(std::move(e));
    }
    if (b.tier() == NatSet::Tier::Finite) return set_intersect(b, a);
    if (a.decidable() && b.decidable())
        return detail::pointwise(a, b, [](bool x, bool y) { return x && y; });
    return detail::gen_wrap(a, b, "&", [](bool x, bool y) { return x && y; });
}

inline NatSet set_union(const NatSet& a, const NatSet& b) {
    if (a.decidable() && b.decidable()) {
        if (a.tier() == NatSet::Tier::Finite && b.tier() == NatSet::Tier::Finite) {
            std::vector<u64> e = a.finite_elements();
            for (u64 x : b.finite_elements()) e.push_back(x);
            return NatSet::finite(std::move(e));
        }
        return detail::pointwise(a, b, [](bool x, bool y) { return x || y; });
    }
    return detail::gen_wrap(a, b, "|", [](bool x, bool y) { return x || y; });
}

inline NatSet set_difference(const NatSet& a, const NatSet& b) {
    if (a.tier() == NatSet::Tier::Finite) {
        std::vector<u64> e;
        for (u64 x : a.finite_elements())
            if (!b.contains(x)) e.push_back(x);
        return NatSet::finite(std::move(e));
    }
    if (a.decidable() && b.decidable())
        return detail::pointwise(a, b, [](bool x, bool y) { return x && !y; });
    NatSet ca = a, cb = b;
    GenRep g;
    g.name = "(" + detail::set_name(a) + "\\" + detail::set_name(b) + ")";
    g.member = [ca, cb](u64 x) { return ca.contains(x) && !cb.contains(x); };
    // removing a decidable set keeps the difference enumerable
    if (a.tier() == NatSet::Tier::Generator && a.gen().nth && b.decidable()) {
        auto nth = a.gen().nth;
        g.nth = [nth, cb](u64 i) {
            u64 seen = 0;
            for (u64 j = 0;; ++j) {
                u64 e = nth(j);
                if (cb.contains(e)) continue;
                if (seen == i) return e;
                ++seen;
            }
        };
    }
    return NatSet::generator(std::move(g));
}

inline NatSet complement(const NatSet& s) {
    if (!s.decidable())
        throw TierError("complement of a generator-tier set is not representable");
    if (s.tier() == NatSet::Tier::Finite) {
        u64 t = s.threshold();
        BitVec tr(t);
        for (u64 i = 0; i < t; ++i) tr.set(i, !s.contains(i));
        return NatSet::periodic(tr, BitVec::from_string("1"));
    }
    u64 t = s.threshold(), p = s.period();
    BitVec tr(t);
    for (u64 i = 0; i < t; ++i) tr.set(i, !s.contains(i));
    BitVec mask(p);
    for (u64 j = 0; j < p; ++j) mask.set(j, !s.contains(t + j));
    return NatSet::periodic(tr, mask);
}

// { x mod m : x in S, x >= threshold }, one lcm(p, m) block of the tail.
inline std::vector<u64> residues(const NatSet& s, u64 m) {
    if (m == 0) throw std::invalid_argument("residues: m must be >= 1");
    detail::EpView v = detail::ep_view(s);
    std::vector<bool> seen(m, false);
    u64 block = detail::lcm64(v.p, m);
    for (u64 i = 0; i < block; ++i)
        if (s.contains(v.t + i)) seen[(v.t + i) % m] = true;
    std::vector<u64> out;
    for (u64 r = 0; r < m; ++r)
        if (seen[r]) out.push_back(r);
    return out;
}

// ---------------------------------------------------------------------------
// Subset tests

inline constexpr u64 kDefaultSubsetHorizon = u64{1} << 16;

// Exact on decidable pairs and for finite left-hand sides; otherwise
// False with a witness or Unknown at the horizon.
inline Verdict3 is_subset(const NatSet& a, const NatSet& b,
                          u64 horizon = kDefaultSubsetHorizon) {
    if (a.tier() == NatSet::Tier::Finite) {
        for (u64 x : a.finite_elements())
            if (!b.contains(x)) return Verdict3::no(x);
        return Verdict3::yes();
    }
    if (a.decidable() && b.decidable()) {
        detail::EpView va = detail::ep_view(a), vb = detail::ep_view(b);
        u64 t = std::max(va.t, vb.t);
        u64 p = detail::lcm64(va.p, vb.p);
        for (u64 x = 0; x < t + p; ++x)
            if (a.contains(x) && !b.contains(x)) return Verdict3::no(x);
        return Verdict3::yes();
    }
    Enumeration en = elements_below(a, horizon);
    for (u64 x : en.elems)
        if (!b.contains(x)) return Verdict3::no(x);
    return Verdict3::unknown("no counterexample below " + std::to_string(en.scanned_to));
}

// Horizon-verified variant used by the filter layer: where the exact test
// is unavailable, a clean scan below `bound` yields True labeled with the
// scanned range instead of Unknown.
inline Verdict3 subset_at_horizon(const NatSet& a, const NatSet& b, u64 bound) {
    if (a.tier() == NatSet::Tier::Finite || (a.decidable() && b.decidable()))
        return is_subset(a, b, bound);
    Enumeration en = elements_below(a, bound);
    for (u64 x : en.elems)
        if (!b.contains(x)) return Verdict3::no(x);
    if (en.elems.empty())  // vacuous scans carry no evidence either way
        return Verdict3::unknown("left side has no elements below " +
                                 std::to_string(en.scanned_to));
    return Verdict3::yes(std::nullopt, "verified below " + std::to_string(en.scanned_to));
}

// ---------------------------------------------------------------------------

inline std::string NatSet::describe() const {
    switch (tier_) {
        case Tier::Finite: {
            std::string s = "{";
            for (std::size_t i = 0; i < elems_.size(); ++i) {
                if (i) s += ",";
                if (i >= 12) { s += "..."; break; }
                s += std::to_string(elems_[i]);
            }
            return s + "}";
        }
        case Tier::Periodic:
            return "per(" + transient_.to_string() + ";" + mask_.to_string() + ")";
        default:
            return gen_->name;
    }
}

}  // namespace felab
