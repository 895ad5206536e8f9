#pragma once

// Density computations and structural classifiers: thick / syndetic /
// piecewise syndetic, arithmetic progressions, difference sets, shifted
// intersections, and the monotonicity property suite for embeddable pairs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "felab/embed.hpp"
#include "felab/natset.hpp"
#include "felab/rational.hpp"

namespace felab {

struct DensityReport {
    std::optional<Rational> natural_density;     // exact, periodic tier only
    std::vector<std::pair<u64, Rational>> density_samples;   // (n, |S cap n| / n)
    std::optional<Rational> banach_upper;        // exact, periodic tier only
    std::vector<std::pair<u64, Rational>> banach_samples;    // (L, best window of length L)
};

// For an eventually periodic set both the natural density and the upper
// Banach density equal ones-in-period / p; the transient is finite and
// the tail is uniformly recurrent.
inline DensityReport density_report(const NatSet& s, u64 horizon,
                                    const std::vector<u64>& window_lengths,
                                    const std::vector<u64>& sample_points = {}) {
    DensityReport r;
    if (s.decidable()) {
        if (s.tier() == NatSet::Tier::Finite) {
            r.natural_density = Rational::zero();
            r.banach_upper = Rational::zero();
        } else {
            u64 ones = s.period_mask().count();
            r.natural_density = Rational(static_cast<std::int64_t>(ones),
                                         static_cast<std::int64_t>(s.period()));
            r.banach_upper = r.natural_density;
        }
    }
    std::vector<u64> pts = sample_points;
    if (pts.empty())
        for (u64 n = horizon / 8; n && n <= horizon; n += horizon / 8) pts.push_back(n);
    u64 wmax = horizon;
    for (u64 n : pts) wmax = std::max(wmax, n);
    Window w = window(s, 0, wmax);
    for (u64 n : pts) {
        if (n == 0) continue;
        r.density_samples.emplace_back(
            n, Rational(static_cast<std::int64_t>(w.bits.count_below(n)),
                        static_cast<std::int64_t>(n)));
    }
    for (u64 len : window_lengths) {
        if (len == 0 || len > horizon) continue;
        u64 cnt = w.bits.count_below(len), best = cnt;
        for (u64 k = 0; k + len < horizon; ++k) {
            cnt += (w.bits.get(k + len) ? 1u : 0u) - (w.bits.get(k) ? 1u : 0u);
            best = std::max(best, cnt);
        }
        r.banach_samples.emplace_back(len, Rational(static_cast<std::int64_t>(best),
                                                    static_cast<std::int64_t>(len)));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Runs, gaps, classifiers

namespace detail {

// Longest run of consecutive members.  For a periodic set with a zero in
// its mask every run fits inside [0, t + 2p + 2), so the scan is exact.
inline u64 max_run(const NatSet& s, u64 horizon, bool* exact = nullptr) {
    u64 scan = horizon;
    bool ex = false;
    if (s.decidable()) {
        if (s.tier() == NatSet::Tier::Finite) {
            scan = s.threshold() + 1;
            ex = true;
        } else if (!s.period_mask().all()) {
            scan = s.threshold() + 2 * s.period() + 2;
            ex = true;
        }
    }
    if (exact) *exact = ex;
    u64 best = 0, cur = 0;
    for (u64 x = 0; x < scan; ++x) {
        cur = s.contains(x) ? cur + 1 : 0;
        best = std::max(best, cur);
    }
    return best;
}

inline u64 max_gap(const NatSet& s, u64 horizon) {
    u64 scan = horizon;
    if (s.tier() == NatSet::Tier::Periodic) scan = s.threshold() + 2 * s.period() + 2;
    std::optional<u64> prev;
    u64 best = 0;
    for (u64 x = 0; x < scan; ++x) {
        if (!s.contains(x)) continue;
        if (prev) best = std::max(best, x - *prev);
        prev = x;
    }
    return best;
}

}  // namespace detail

inline Verdict3 is_thick(const NatSet& s, u64 horizon) {
    if (s.decidable()) {
        if (s.tier() == NatSet::Tier::Finite) return Verdict3::no();
        return s.period_mask().all() ? Verdict3::yes() : Verdict3::no();
    }
    u64 run = detail::max_run(s, horizon);
    return Verdict3::unknown("max run below horizon: " + std::to_string(run));
}

inline Verdict3 is_syndetic(const NatSet& s, u64 horizon) {
    if (s.decidable()) {
        if (s.tier() == NatSet::Tier::Finite) return Verdict3::no();
        return Verdict3::yes();  // nonempty tail mask: gaps bounded by t + p
    }
    u64 gap = detail::max_gap(s, horizon);
    return Verdict3::unknown("max gap below horizon: " + std::to_string(gap));
}

inline Verdict3 is_piecewise_syndetic(const NatSet& s, u64 gap_bound, u64 horizon) {
    if (s.decidable()) {
        // periodic: piecewise syndetic iff syndetic iff infinite
        return s.infinite() ? Verdict3::yes() : Verdict3::no();
    }
    // Evidence only: longest interval on which gaps stay <= gap_bound.
    u64 best = 0, start = 0;
    std::optional<u64> prev;
    for (u64 x = 0; x < horizon; ++x) {
        if (!s.contains(x)) continue;
        if (prev && x - *prev > gap_bound) start = x;
        prev = x;
        best = std::max(best, x - start);
    }
    return Verdict3::unknown("longest gap-" + std::to_string(gap_bound) +
                             "-bounded stretch: " + std::to_string(best));
}

struct StructureReport {
    Verdict3 thick, syndetic, piecewise_syndetic;
    u64 max_run_seen = 0;
    u64 max_gap_seen = 0;
    u64 horizon = 0;
};

inline StructureReport classify(const NatSet& s, u64 horizon, u64 gap_bound = 64) {
    StructureReport r;
    r.horizon = horizon;
    r.thick = is_thick(s, horizon);
    r.syndetic = is_syndetic(s, horizon);
    r.piecewise_syndetic = is_piecewise_syndetic(s, gap_bound, horizon);
    r.max_run_seen = detail::max_run(s, horizon);
    r.max_gap_seen = detail::max_gap(s, horizon);
    return r;
}

// ---------------------------------------------------------------------------
// Arithmetic progressions

// First (a, d) in lexicographic order with a, a+d, ..., a+(k-1)d in S and
// a+(k-1)d < horizon.
inline std::optional<std::pair<u64, u64>> find_ap(const NatSet& s, u64 k, u64 horizon) {
    if (k == 0 || horizon == 0) throw std::invalid_argument("find_ap: k, horizon >= 1");
    Window w = window(s, 0, horizon);
    auto in = [&](u64 x) { return x < horizon && w.bits.get(x); };
    for (u64 a = 0; a < horizon; ++a) {
        if (!in(a)) continue;
        if (k == 1) return {{a, 1}};
        for (u64 d = 1; a + (k - 1) * d < horizon; ++d) {
            bool ok = true;
            for (u64 i = 1; i < k && ok; ++i)
                if (!in(a + i * d)) ok = false;
            if (ok) return {{a, d}};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Difference sets: D(S) = { d >= 0 : exists x with x, x+d in S }

inline Verdict3 diff_member(const NatSet& s, u64 d) {
    if (s.decidable()) {
        if (s.tier() == NatSet::Tier::Finite) {
            for (u64 x : s.finite_elements())
                if (s.contains(x + d)) return Verdict3::yes(x);
            return Verdict3::no();
        }
        u64 t = s.threshold(), p = s.period();
        for (u64 x = 0; x < t; ++x)
            if (s.contains(x) && s.contains(x + d)) return Verdict3::yes(x);
        for (u64 r = 0; r < p; ++r)
            if (s.contains(t + r) && s.contains(t + r + d)) return Verdict3::yes(t + r);
        return Verdict3::no();
    }
    u64 bound = u64{1} << 16;
    for (u64 x = 0; x < bound; ++x)
        if (s.contains(x) && s.contains(x + d)) return Verdict3::yes(x);
    return Verdict3::unknown("no pair below " + std::to_string(bound));
}

inline Window difference_window(const NatSet& s, u64 horizon) {
    Window out{0, horizon, BitVec(horizon)};
    if (s.decidable()) {
        for (u64 d = 0; d < horizon; ++d)
            if (diff_member(s, d).is_true()) out.bits.set(d, true);
        return out;
    }
    u64 bound = 2 * horizon;
    Window w = window(s, 0, bound);
    for (u64 d = 0; d < horizon; ++d)
        for (u64 x = 0; x + d < bound; ++x)
            if (w.bits.get(x) && w.bits.get(x + d)) { out.bits.set(d, true); break; }
    return out;
}

// ---------------------------------------------------------------------------

inline NatSet shifted_intersection(const NatSet& s, const NatSet& g) {
    NatSet acc = NatSet::naturals();
    bool first = true;
    for (u64 t : g.finite_elements()) {
        NatSet part = shift_left(s, t);
        acc = first ? part : set_intersect(acc, part);
        first = false;
    }
    return acc;  // empty G: intersection over nothing is N
}

// ---------------------------------------------------------------------------
// Property suite for an Embeds pair

struct SuiteConfig {
    u64 k_max = 5;      // AP lengths checked
    u64 d_max = 256;    // difference values checked
    u64 g_max = 6;      // shifted intersections over G subseteq [0, g_max), |G| <= 3
    u64 horizon = 4096;
};

struct SuiteCheck {
    std::string name;
    bool passed = false;
    bool applicable = true;
    std::string detail;
};

struct SuiteReport {
    bool vacuous = false;    // pair did not embed; nothing to check
    std::vector<SuiteCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (c.applicable && !c.passed) return false;
        return true;
    }
};

inline SuiteReport property_suite(const NatSet& a, const NatSet& b,
                                  const SuiteConfig& cfg = {}) {
    SuiteReport rep;
    FeVerdict fe = fe_decide(a, b);
    if (!fe.embeds_p()) {
        rep.vacuous = true;
        return rep;
    }

    {
        SuiteCheck c{"piecewise_syndetic_transfer"};
        Verdict3 pa = is_piecewise_syndetic(a, 64, cfg.horizon);
        Verdict3 pb = is_piecewise_syndetic(b, 64, cfg.horizon);
        c.applicable = pa.is_true();
        c.passed = !pa.is_true() || pb.is_true();
        if (!c.passed) c.detail = "A piecewise syndetic but B is not";
        rep.checks.push_back(c);
    }
    {
        SuiteCheck c{"ap_transfer", true};
        for (u64 k = 2; k <= cfg.k_max; ++k) {
            auto apa = find_ap(a, k, cfg.horizon);
            if (!apa) continue;
            u64 hb = b.decidable() && b.infinite()
                         ? std::max(cfg.horizon, b.threshold() + (k + 1) * b.period())
                         : cfg.horizon;
            auto apb = find_ap(b, k, hb);
            if (!apb) {
                c.passed = false;
                c.detail = "A has a " + std::to_string(k) + "-AP at (" +
                           std::to_string(apa->first) + "," + std::to_string(apa->second) +
                           ") but none was found in B";
                break;
            }
        }
        rep.checks.push_back(c);
    }
    {
        SuiteCheck c{"banach_density_monotone"};
        DensityReport da = density_report(a, 64, {});
        DensityReport db = density_report(b, 64, {});
        c.applicable = da.banach_upper && db.banach_upper;
        c.passed = !c.applicable || *da.banach_upper <= *db.banach_upper;
        if (c.applicable && !c.passed)
            c.detail = "BD(A)=" + da.banach_upper->str() + " > BD(B)=" + db.banach_upper->str();
        rep.checks.push_back(c);
    }
    {
        SuiteCheck c{"difference_inclusion", true};
        for (u64 d = 0; d < cfg.d_max; ++d) {
            if (diff_member(a, d).is_true() && !diff_member(b, d).is_true()) {
                c.passed = false;
                c.detail = "d=" + std::to_string(d) + " in A-A but not in B-B";
                break;
            }
        }
        rep.checks.push_back(c);
    }
    {
        SuiteCheck c{"shifted_intersection_fe", true};
        std::vector<std::vector<u64>> gs;
        for (u64 x = 0; x < cfg.g_max; ++x) {
            gs.push_back({x});
            for (u64 y = x + 1; y < cfg.g_max; ++y) {
                gs.push_back({x, y});
                for (u64 z = y + 1; z < cfg.g_max; ++z) gs.push_back({x, y, z});
            }
        }
        for (const auto& g : gs) {
            NatSet gset = NatSet::finite(g);
            FeVerdict v = fe_decide(shifted_intersection(a, gset), shifted_intersection(b, gset));
            if (!v.embeds_p()) {
                c.passed = false;
                c.detail = "G=" + gset.describe() + " breaks fe of shifted intersections";
                break;
            }
        }
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace felab
