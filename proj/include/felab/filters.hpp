#pragma once

// Finitely generated and parametric filter bases as computable stand-ins
// for ultrafilters.  A finite base generates exactly the supersets of the
// intersection of its generators, so membership collapses to one subset
// test; parametric bases are descending chains (tails of a set, or
// iterated leftward-shift intersections) searched up to an index cap.
//
// True/False answers are exact on the periodic tier.  Where generator-tier
// sets force sampling, True verdicts carry a "verified below ..." note and
// Unknown propagates pessimistically: an Unknown sub-query never becomes
// True.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "felab/embed.hpp"
#include "felab/natset.hpp"

namespace felab {

class FilterBase {
public:
    static FilterBase make(std::vector<NatSet> gens, u64 horizon = kDefaultSubsetHorizon) {
        if (gens.empty()) throw std::invalid_argument("FilterBase: no generators");
        FilterBase fb;
        fb.gens_ = std::move(gens);
        fb.core_ = fb.gens_.front();
        for (std::size_t i = 1; i < fb.gens_.size(); ++i)
            fb.core_ = set_intersect(fb.core_, fb.gens_[i]);
        if (fb.core_.decidable()) {
            fb.fip_ = fb.core_.is_empty() ? Verdict3::no() : Verdict3::yes();
        } else {
            Enumeration en = elements_below(fb.core_, horizon, 1);
            fb.fip_ = en.elems.empty()
                          ? Verdict3::unknown("FIP unverified (horizon " +
                                              std::to_string(en.scanned_to) + ")")
                          : Verdict3::yes(en.elems.front());
        }
        return fb;
    }

    const std::vector<NatSet>& generators() const { return gens_; }
    const NatSet& core() const { return core_; }
    const Verdict3& fip() const { return fip_; }

    void require_fip() const {
        if (fip_.is_false()) throw FipViolation("filter base lacks the finite intersection property");
    }

private:
    std::vector<NatSet> gens_;
    NatSet core_;
    Verdict3 fip_;
};

class ParametricBase {
public:
    enum class Kind { TailsOf, ShiftsDown };

    static ParametricBase make(Kind kind, NatSet s, u64 index_cap) {
        ParametricBase pb;
        pb.kind_ = kind;
        pb.base_ = std::move(s);
        pb.index_cap_ = index_cap;
        if (kind == Kind::TailsOf && pb.base_.decidable() && !pb.base_.infinite()) {
            u64 t = pb.base_.threshold();
            if (t <= index_cap)
                throw FipViolation("TailsOf chain member empty below index cap");
        }
        if (kind == Kind::ShiftsDown && pb.base_.decidable()) {
            NatSet acc = pb.base_;
            u64 lim = std::min<u64>(index_cap, kShiftsDownLimit);
            pb.shifts_chain_.push_back(acc);
            for (u64 n = 1; n <= lim; ++n) {
                acc = set_intersect(acc, shift_left(pb.base_, n));
                if (acc.is_empty())
                    throw FipViolation("ShiftsDown chain member empty at index " +
                                       std::to_string(n));
                pb.shifts_chain_.push_back(acc);
            }
        }
        return pb;
    }

    Kind kind() const { return kind_; }
    const NatSet& base() const { return base_; }
    u64 index_cap() const { return index_cap_; }

    NatSet chain(u64 n) const {
        if (kind_ == Kind::TailsOf) {
            if (n == 0) return base_;
            if (base_.tier() == NatSet::Tier::Generator) {
                // keep deep tails symbolic; an interval subtrahend would
                // materialize n elements
                NatSet s = base_;
                GenRep g;
                g.name = "(" + s.gen().name + ">=" + std::to_string(n) + ")";
                g.member = [s, n](u64 x) { return x >= n && s.contains(x); };
                if (s.gen().nth) {
                    auto nth = s.gen().nth;
                    g.nth = [nth, n](u64 i) {
                        u64 idx = 0;
                        while (nth(idx) < n) ++idx;
                        return nth(idx + i);
                    };
                }
                return NatSet::generator(std::move(g));
            }
            return set_difference(base_, NatSet::interval(0, n));
        }
        if (!shifts_chain_.empty())
            return shifts_chain_[std::min<std::size_t>(n, shifts_chain_.size() - 1)];
        NatSet acc = base_;
        for (u64 k = 1; k <= std::min<u64>(n, kShiftsDownLimit); ++k)
            acc = set_intersect(acc, shift_left(base_, k));
        return acc;
    }

    // Search indices: dense start, then powers of two up to the cap.
    std::vector<u64> schedule() const {
        std::vector<u64> out;
        u64 dense = std::min<u64>(index_cap_, 64);
        for (u64 n = 0; n <= dense; ++n) out.push_back(n);
        for (u64 n = 128; n <= index_cap_ && n != 0; n *= 2) out.push_back(n);
        if (out.back() != index_cap_) out.push_back(index_cap_);
        return out;
    }

    void require_fip() const {}  // nonempty descending chain always has FIP

    // For decidable tail chains, indices past the transient repeat the tail
    // pattern shifted; searches clamp here and settle deeper questions by
    // the stable-index argument instead of materializing huge transients.
    u64 decidable_depth_cap() const {
        if (kind_ == Kind::TailsOf && base_.decidable() && base_.infinite())
            return std::max<u64>(64, base_.threshold() + 2 * base_.period());
        return index_cap_;
    }

    std::string describe() const {
        std::string head = kind_ == Kind::TailsOf ? "tails(" : "shiftsdown(";
        return head + detail::set_name(base_) + "," + std::to_string(index_cap_) + ")";
    }

private:
    static constexpr u64 kShiftsDownLimit = 4096;
    Kind kind_ = Kind::TailsOf;
    NatSet base_;
    u64 index_cap_ = 0;
    std::vector<NatSet> shifts_chain_;
};

using AnyBase = std::variant<FilterBase, ParametricBase>;

inline std::string base_describe(const AnyBase& b) {
    if (const auto* fb = std::get_if<FilterBase>(&b)) {
        std::string s = "base{";
        for (std::size_t i = 0; i < fb->generators().size(); ++i) {
            if (i) s += ",";
            s += detail::set_name(fb->generators()[i]);
        }
        return s + "}";
    }
    return std::get<ParametricBase>(b).describe();
}

inline void require_fip(const AnyBase& b) {
    if (const auto* fb = std::get_if<FilterBase>(&b)) fb->require_fip();
}

// ---------------------------------------------------------------------------

inline Verdict3 fip_check(const FilterBase& base, u64 horizon = kDefaultSubsetHorizon) {
    if (base.core().decidable())
        return base.core().is_empty() ? Verdict3::no() : Verdict3::yes();
    Enumeration en = elements_below(base.core(), horizon, 1);
    if (!en.elems.empty()) return Verdict3::yes(en.elems.front());
    return Verdict3::unknown("no common element below " + std::to_string(en.scanned_to));
}

// ---------------------------------------------------------------------------
// Membership in the generated filter

inline Verdict3 filter_member(const FilterBase& base, const NatSet& x,
                              u64 horizon = kDefaultSubsetHorizon) {
    base.require_fip();
    return subset_at_horizon(base.core(), x, horizon);
}

inline Verdict3 filter_member(const ParametricBase& base, const NatSet& x,
                              u64 horizon = kDefaultSubsetHorizon) {
    const NatSet& s = base.base();
    // Exact route for tail chains on the decidable tier: X contains some
    // tail of S iff S \ X is finite.
    if (base.kind() == ParametricBase::Kind::TailsOf && s.decidable() && x.decidable()) {
        NatSet d = set_difference(s, x);
        if (d.infinite()) {
            u64 w = d.threshold();  // some tail element of S missing from X
            while (!d.contains(w)) ++w;
            return Verdict3::no(w);
        }
        u64 n = d.is_empty() ? 0 : d.finite_elements().back() + 1;
        return Verdict3::yes(n);
    }
    for (u64 n : base.schedule()) {
        Verdict3 v = subset_at_horizon(base.chain(n), x, horizon);
        if (v.is_true()) return Verdict3::yes(n, v.note);
    }
    return Verdict3::unknown("no chain member below index cap " +
                             std::to_string(base.index_cap()) + " is included");
}

inline Verdict3 filter_member(const AnyBase& base, const NatSet& x,
                              u64 horizon = kDefaultSubsetHorizon) {
    if (const auto* fb = std::get_if<FilterBase>(&base)) return filter_member(*fb, x, horizon);
    return filter_member(std::get<ParametricBase>(base), x, horizon);
}

inline Verdict3 leftward_shift_member(const NatSet& b, const AnyBase& base, u64 x,
                                      u64 horizon = kDefaultSubsetHorizon) {
    return filter_member(base, shift_left(b, x), horizon);
}

// ---------------------------------------------------------------------------
// Filter sums

struct InnerWitness {
    u64 k;
    Verdict3 verdict;
};

struct SumMemberReport {
    Verdict3 verdict;
    std::string method;
    std::vector<InnerWitness> inner;
};

// X in U + V, tested through K = { k : X - k in <V> }: the verdict is
// filter_member(U, K).  On the decidable tier K is computed exactly as an
// eventually periodic set (X - k cycles in k); otherwise only the shifts
// that matter -- elements of U's core -- are sampled.
inline SumMemberReport filter_sum_member(const NatSet& x, const AnyBase& u, const AnyBase& v,
                                         u64 horizon = kDefaultSubsetHorizon) {
    require_fip(u);
    require_fip(v);
    SumMemberReport rep;

    if (x.decidable()) {
        u64 t = x.threshold(), p = x.period();
        BitVec tr(t), mask(p);
        bool exact = true;
        for (u64 k = 0; k < t + p && exact; ++k) {
            Verdict3 in = filter_member(v, shift_left(x, k), horizon);
            rep.inner.push_back({k, in});
            if (in.is_unknown() || !in.note.empty()) exact = false;
            if (k < t)
                tr.set(k, in.is_true());
            else
                mask.set(k - t, in.is_true());
        }
        if (exact) {
            NatSet kstar = NatSet::periodic(tr, mask);
            rep.method = "exact residue closure of the inner shift set";
            rep.verdict = filter_member(u, kstar, horizon);
            return rep;
        }
        rep.inner.clear();
    }

    const auto* fb = std::get_if<FilterBase>(&u);
    if (fb && fb->core().decidable()) {
        u64 khor = std::min<u64>(horizon, 512);
        Enumeration matters = elements_below(fb->core(), khor);
        bool sampled_note = false;
        for (u64 k : matters.elems) {
            Verdict3 in = filter_member(v, shift_left(x, k), horizon);
            rep.inner.push_back({k, in});
            if (in.is_false()) {
                rep.method = "sampled shifts from U's core";
                rep.verdict = Verdict3::no(k, "X - k is outside <V> for k in U's core");
                return rep;
            }
            if (in.is_unknown()) {
                rep.method = "sampled shifts from U's core";
                rep.verdict = Verdict3::unknown("inner membership unknown at k=" + std::to_string(k));
                return rep;
            }
            if (!in.note.empty()) sampled_note = true;
        }
        rep.method = "sampled shifts from U's core";
        bool complete = !fb->core().infinite();
        std::string note;
        if (!complete)
            note = "verified for core shifts below " + std::to_string(khor);
        else if (sampled_note)
            note = "inner memberships horizon-verified";
        rep.verdict = Verdict3::yes(std::nullopt, note);
        return rep;
    }

    rep.method = "no exact route";
    rep.verdict = Verdict3::unknown("sum membership undetermined for this base combination");
    return rep;
}

// ---------------------------------------------------------------------------
// U-richness

struct RichnessVerdict {
    Verdict3 status;
    std::optional<std::string> member;  // description of the witnessing member
    std::optional<FeVerdict> fe;
};

namespace detail {

inline RichnessVerdict rich_via(const NatSet& a, const std::string& desc, const NatSet& b,
                                u64 horizon) {
    RichnessVerdict r;
    if (a.decidable() && b.decidable()) {
        FeVerdict v = fe_decide(a, b);
        r.fe = v;
        r.member = desc;
        r.status = v.embeds_p() ? Verdict3::yes() : Verdict3::no();
        return r;
    }
    FeVerdict v = fe_bounded(a, b, 24, horizon);
    r.fe = v;
    r.member = desc;
    if (v.embeds_p())
        r.status = Verdict3::yes(std::nullopt, "prefix-verified to horizon");
    else if (v.refuted_p())
        r.status = Verdict3::no();
    else
        r.status = Verdict3::unknown(v.horizon ? v.horizon->note : "bounded search exhausted");
    return r;
}

}  // namespace detail

// B is U-rich iff some member of <U> is finitely embeddable in B.  Members
// of a finite base are the supersets of the core, and fe is downward
// monotone in the left argument, so the core alone decides.
inline RichnessVerdict urich_check(const AnyBase& u, const NatSet& b,
                                   u64 horizon = kDefaultSubsetHorizon) {
    require_fip(u);
    if (const auto* fb = std::get_if<FilterBase>(&u))
        return detail::rich_via(fb->core(), "core " + detail::set_name(fb->core()), b, horizon);

    const ParametricBase& pb = std::get<ParametricBase>(u);
    const NatSet& s = pb.base();
    u64 depth_cap = pb.decidable_depth_cap();
    RichnessVerdict last;
    for (u64 n : pb.schedule()) {
        if (n > depth_cap) break;
        RichnessVerdict r = detail::rich_via(pb.chain(n), "chain index " + std::to_string(n),
                                             b, horizon);
        if (r.status.is_true()) return r;
        last = r;
    }
    // Tail chains on the decidable tier stabilize: beyond max(t_S, t_B) the
    // verdict of fe(G_n, B) no longer depends on n, and it is monotone, so
    // the stable verdict answers the unbounded existential.
    if (pb.kind() == ParametricBase::Kind::TailsOf && s.decidable() && s.infinite() &&
        b.decidable()) {
        u64 nstar = std::max(s.threshold(), b.threshold()) + 1;
        RichnessVerdict r = detail::rich_via(pb.chain(nstar), "stable chain index " +
                                             std::to_string(nstar), b, horizon);
        return r;
    }
    last.status = Verdict3::unknown("no chain member embeds below index cap " +
                                    std::to_string(pb.index_cap()));
    return last;
}

// ---------------------------------------------------------------------------
// Filter-level finite embeddability

// U <=fe V iff every member of <V> is U-rich.  Richness is upward monotone
// in its set argument, so a finite base V reduces to its core.
inline Verdict3 filter_fe(const AnyBase& u, const AnyBase& v,
                          u64 horizon = kDefaultSubsetHorizon) {
    require_fip(u);
    require_fip(v);
    if (const auto* fv = std::get_if<FilterBase>(&v))
        return urich_check(u, fv->core(), horizon).status;

    const ParametricBase& pv = std::get<ParametricBase>(v);
    const NatSet& s = pv.base();
    const auto* fu = std::get_if<FilterBase>(&u);
    if (pv.kind() == ParametricBase::Kind::TailsOf && s.decidable() && s.infinite() &&
        fu && fu->core().decidable()) {
        // Exact: every tail of S is rich iff the core has translates into S
        // at arbitrarily large shifts, i.e. at some tail shift of S.
        u64 t = s.threshold(), p = s.period();
        for (u64 k = t; k < t + p; ++k)
            if (is_subset(fu->core(), shift_left(s, k)).is_true()) return Verdict3::yes(k);
        return Verdict3::no();
    }
    u64 depth_cap = pv.decidable_depth_cap();
    for (u64 n : pv.schedule()) {
        if (n > depth_cap) break;
        RichnessVerdict r = urich_check(u, pv.chain(n), horizon);
        if (r.status.is_false()) return Verdict3::no(n);
        if (r.status.is_unknown())
            return Verdict3::unknown("richness unknown at chain index " + std::to_string(n));
    }
    return Verdict3::unknown("verified to index_cap " + std::to_string(pv.index_cap()) +
                             "; unbounded claim not decided");
}

// ---------------------------------------------------------------------------
// Whole-set translate property (left summand characterization)

struct LeftSumEntry {
    std::string target;
    Truth holds = Truth::Unknown;
    std::optional<std::string> member;
    std::optional<u64> shift;
    std::optional<Verdict3> cross_check;  // k must land in B - V
    std::string note;
};

struct LeftSumReport {
    std::vector<LeftSumEntry> entries;
    bool all_hold() const {
        for (const auto& e : entries)
            if (e.holds != Truth::True) return false;
        return true;
    }
};

inline LeftSumReport left_sum_property(const AnyBase& v, const std::vector<NatSet>& w_sets,
                                       u64 horizon = kDefaultSubsetHorizon) {
    require_fip(v);
    LeftSumReport rep;
    for (const NatSet& b : w_sets) {
        LeftSumEntry e;
        e.target = detail::set_name(b);
        std::vector<std::pair<NatSet, std::string>> candidates;
        if (const auto* fb = std::get_if<FilterBase>(&v)) {
            candidates.emplace_back(fb->core(), "core " + detail::set_name(fb->core()));
        } else {
            const ParametricBase& pb = std::get<ParametricBase>(v);
            u64 depth_cap = pb.decidable_depth_cap();
            for (u64 n : pb.schedule()) {
                if (n > depth_cap) break;
                candidates.emplace_back(pb.chain(n), "chain index " + std::to_string(n));
            }
        }
        bool any_unknown = false;
        for (auto& [a, desc] : candidates) {
            Verdict3 it = includes_translate(a, b, horizon);
            if (it.is_true()) {
                e.holds = Truth::True;
                e.member = desc;
                e.shift = it.witness;
                e.cross_check = leftward_shift_member(b, v, *it.witness, horizon);
                e.note = it.note;
                break;
            }
            if (it.is_unknown()) any_unknown = true;
        }
        if (e.holds != Truth::True) {
            e.holds = any_unknown ? Truth::Unknown : Truth::False;
            e.note = any_unknown ? "translate search inconclusive at horizon"
                                 : "no member of the base has a translate inside the target";
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Partition-regularity experiment

struct Coloring {
    enum class Kind { Residue, Blocks };
    Kind kind = Kind::Residue;
    u64 colors = 2;
    u64 block_len = 1;

    NatSet piece_pattern(u64 i) const {
        if (kind == Kind::Residue) return NatSet::arithmetic(i, colors);
        u64 period = colors * block_len;
        BitVec mask(period);
        for (u64 j = 0; j < block_len; ++j) mask.set(i * block_len + j, true);
        return NatSet::periodic(BitVec(), mask);
    }

    std::string describe() const {
        if (kind == Kind::Residue) return "mod " + std::to_string(colors);
        return std::to_string(colors) + " blocks of " + std::to_string(block_len);
    }
};

struct RegularityPiece {
    std::string piece;
    RichnessVerdict rich;
};

struct RegularityReport {
    RichnessVerdict whole;
    std::vector<RegularityPiece> pieces;
    bool gap = false;  // no piece rich: legal for non-ultrafilter bases
};

inline RegularityReport regularity_experiment(const AnyBase& u, const NatSet& b,
                                              const Coloring& coloring,
                                              u64 horizon = kDefaultSubsetHorizon) {
    if (coloring.colors < 2 || coloring.colors > 4)
        throw std::invalid_argument("regularity_experiment: 2..4 colors");
    RegularityReport rep;
    rep.whole = urich_check(u, b, horizon);
    bool any_rich = false;
    for (u64 i = 0; i < coloring.colors; ++i) {
        NatSet piece = set_intersect(b, coloring.piece_pattern(i));
        RegularityPiece pr;
        pr.piece = "color " + std::to_string(i) + " (" + coloring.describe() + ")";
        pr.rich = urich_check(u, piece, horizon);
        any_rich = any_rich || pr.rich.status.is_true();
        rep.pieces.push_back(std::move(pr));
    }
    rep.gap = !any_rich;
    return rep;
}

}  // namespace felab
