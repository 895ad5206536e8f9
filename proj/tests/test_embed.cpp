#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "felab/embed.hpp"
#include "felab/parser.hpp"
#include "helpers.hpp"

using namespace felab;
using namespace felab::testing;

namespace {

// Element-by-element translate check, the oracle for the word-parallel scan.
std::vector<u64> brute_witnesses(const std::vector<u64>& f, const NatSet& b,
                                 u64 k_lo, u64 k_hi) {
    std::vector<u64> out;
    for (u64 k = k_lo; k < k_hi; ++k) {
        bool ok = true;
        for (u64 e : f)
            if (!b.contains(e + k)) { ok = false; break; }
        if (ok) out.push_back(k);
    }
    return out;
}

// Definition-chasing oracle: embeddability of eventually periodic pairs
// reduces to one long-enough prefix and one large-enough shift range.
bool fe_oracle(const NatSet& a, const NatSet& b) {
    u64 n0 = a.threshold() + b.threshold() +
             2 * detail::lcm64(a.period(), b.period()) * b.period() + 2;
    u64 k0 = b.threshold() + b.period() + n0;
    std::vector<u64> prefix;
    for (u64 x = 0; x < n0; ++x)
        if (a.contains(x)) prefix.push_back(x);
    return !brute_witnesses(prefix, b, 0, k0 + 1).empty();
}

}  // namespace

TEST_CASE("translate witnesses on fixed examples") {
    CHECK(translate_witnesses(NatSet::finite({0, 2}), evens(), 0, 7) ==
          std::vector<u64>{0, 2, 4, 6});
    CHECK(translate_witnesses(NatSet::finite({0, 1}), evens(), 0, 64).empty());
    // empty F embeds everywhere
    CHECK(translate_witnesses(NatSet::empty(), mult(3), 2, 5) == std::vector<u64>{2, 3, 4});
}

TEST_CASE("translate witnesses agree with the element-wise scan") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 80; ++i) {
        NatSet b = random_ep(rng);
        std::vector<u64> f;
        for (u64 j = 0, n = 1 + rng() % 6; j < n; ++j) f.push_back(rng() % 48);
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        u64 lo = rng() % 16, hi = lo + rng() % 200;
        CHECK(translate_witnesses(NatSet::finite(f), b, lo, hi) ==
              brute_witnesses(f, b, lo, hi));
    }
}

TEST_CASE("fe decisions on fixed examples") {
    CHECK(fe_decide(evens(), NatSet::naturals()).embeds_p());
    CHECK(fe_decide(mult(6), mult(3)).embeds_p());
    CHECK(fe_decide(odds(), evens()).embeds_p());
    CHECK(std::get<ClosureShift>(*fe_decide(odds(), evens()).certificate).k == 1);

    FeVerdict v = fe_decide(mult(3), mult(6));
    REQUIRE(v.refuted_p());
    CHECK(v.refutation->finite_part == NatSet::finite({0, 3}));
    const auto& rp = std::get<ResidueProof>(v.refutation->exhaustiveness);
    CHECK(rp.shift_bound == 6);
    CHECK(rp.violations.size() == 6);
    CHECK(verify_refutation(mult(3), mult(6), *v.refutation));
}

TEST_CASE("fe with finite right-hand side") {
    FeVerdict yes = fe_decide(NatSet::finite({1, 2}), NatSet::finite({3, 4, 5}));
    REQUIRE(yes.embeds_p());
    CHECK(std::get<ClosureShift>(*yes.certificate).k == 2);

    FeVerdict no = fe_decide(NatSet::naturals(), NatSet::finite({0, 1, 2}));
    REQUIRE(no.refuted_p());
    CHECK(std::get<BoundedDomain>(no.refutation->exhaustiveness).bound == 4);
    CHECK(verify_refutation(NatSet::naturals(), NatSet::finite({0, 1, 2}), *no.refutation));
}

TEST_CASE("fe decision matches the definition-chasing oracle") {
    std::mt19937_64 rng(202);
    int embeds = 0, refuted = 0;
    for (int i = 0; i < 150; ++i) {
        NatSet a = random_ep(rng, 8, 6), b = random_ep(rng, 8, 6);
        FeVerdict v = fe_decide(a, b);
        CHECK(v.embeds_p() == fe_oracle(a, b));
        CHECK(verify_fe_verdict(a, b, v));
        (v.embeds_p() ? embeds : refuted)++;
    }
    CHECK(embeds > 10);
    CHECK(refuted > 10);
}

TEST_CASE("bounded search over generator sets") {
    // every interval [0,n) lands on the run [2^n, 2^n + n)
    FeVerdict v = fe_bounded(NatSet::naturals(), make_qset(), 6, 1 << 10);
    REQUIRE(v.embeds_p());
    const auto& pw = std::get<PrefixWitnesses>(*v.certificate);
    REQUIRE(pw.pairs.size() == 6);
    CHECK(pw.pairs.back() == std::pair<u64, u64>{6, 64});
    CHECK(verify_certificate(NatSet::naturals(), make_qset(), *v.certificate));

    // {2,4,5} subseteq Q kills every even-only target
    CHECK(fe_bounded(make_qset(), evens(), 8, 1 << 10).refuted_p());

    // too small a shift cap yields Unknown, not a false refutation
    FeVerdict u = fe_bounded(NatSet::naturals(), make_qset(), 6, 60);
    CHECK(u.status == FeVerdict::Status::Unknown);
    CHECK(u.horizon->n_max == 6);
}

TEST_CASE("proper embeddability") {
    ProperFeReport same = proper_fe(evens(), evens());
    CHECK(same.proper == Truth::True);
    CHECK(*same.tail_witness == 0);

    // B = [0,4) u 4N_{>=4}: {0,1} fits only inside the transient
    NatSet b = NatSet::periodic(BitVec::from_string("1111"), BitVec::from_string("1000"));
    ProperFeReport r = proper_fe(NatSet::finite({0, 1}), b);
    CHECK(r.fe.embeds_p());
    CHECK(r.proper == Truth::False);
    REQUIRE(r.uniform_shift);
    CHECK(is_subset(NatSet::finite({0, 1}), shift_left(b, *r.uniform_shift)).is_true());

    ProperFeReport no = proper_fe(mult(3), mult(6));
    CHECK(no.proper == Truth::False);
    CHECK_FALSE(no.uniform_shift);

    // finite targets never embed properly
    ProperFeReport fin = proper_fe(NatSet::finite({0}), NatSet::finite({5}));
    CHECK(fin.fe.embeds_p());
    CHECK(fin.proper == Truth::False);
}

TEST_CASE("proper embeddability has recurring witnesses") {
    std::mt19937_64 rng(303);
    for (int i = 0; i < 60; ++i) {
        NatSet b = random_ep(rng, 8, 8);
        NatSet a = random_subset_of(rng, b, 0.5);
        ProperFeReport r = proper_fe(a, b);
        if (r.proper != Truth::True) continue;
        u64 k = *r.tail_witness;
        REQUIRE(k >= b.threshold());
        // witnesses recur with the period of B
        for (u64 j = 1; j <= 3; ++j)
            CHECK(is_subset(a, shift_left(b, k + j * b.period())).is_true());
    }
}

TEST_CASE("whole-set translate inclusion") {
    Verdict3 v = includes_translate(odds(), evens());
    CHECK(v.is_true());
    CHECK(*v.witness == 1);
    CHECK(includes_translate(mult(3), mult(6)).is_false());
    CHECK(includes_translate(NatSet::empty(), NatSet::finite({7})).is_true());

    // finite source against a generator target stays exact
    Verdict3 q = includes_translate(NatSet::finite({0, 1, 2}), make_qset());
    CHECK(q.is_true());
    CHECK(*q.witness == 8);  // first length-3 run of Q starts at 2^3
}

TEST_CASE("constructed bprime on the interval pair") {
    BPrimeResult r = construct_bprime(NatSet::finite({0, 1}), NatSet::naturals(), 3, 1 << 10);
    CHECK_FALSE(r.exhausted);
    CHECK(r.shifts == std::vector<u64>{0, 2, 5});
    CHECK(r.bprime == NatSet::finite({0, 2, 3, 5, 6}));
}

TEST_CASE("bprime prefixes agree with the source") {
    std::mt19937_64 rng(404);
    int built = 0;
    for (int i = 0; i < 40; ++i) {
        NatSet b = random_ep(rng, 6, 8);
        // a tail shift guarantees recurring witnesses for every prefix
        u64 k = b.threshold() + rng() % b.period();
        NatSet a = random_subset_of(rng, shift_left(b, k), 0.6);
        if (a.is_empty()) continue;
        BPrimeResult r = construct_bprime(a, b, 12, 1 << 16);
        REQUIRE_FALSE(r.exhausted);
        ++built;
        for (std::size_t j = 0; j + 1 < r.shifts.size(); ++j)
            CHECK(r.shifts[j + 1] > r.shifts[j] + j + 1);
        for (u64 n = 1; n <= r.n_max; ++n) {
            u64 kn = r.shifts[n - 1];
            for (u64 x = 0; x < n; ++x) {
                CHECK(a.contains(x) == r.bprime.contains(x + kn));  // A = B'-k_n on [0,n)
                if (a.contains(x)) CHECK(b.contains(x + kn));       // B' subseteq B piecewise
            }
        }
    }
    CHECK(built >= 20);
}

TEST_CASE("two-way query") {
    FeEquivReport r = fe_equiv(evens(), odds());
    CHECK(r.forward.embeds_p());
    CHECK(r.backward.embeds_p());

    FeEquivReport s = fe_equiv(mult(3), mult(6));
    CHECK(s.forward.refuted_p());
    CHECK(s.backward.embeds_p());
}

TEST_CASE("tampered certificates are rejected") {
    CHECK(verify_certificate(odds(), evens(), ClosureShift{1}));
    CHECK_FALSE(verify_certificate(odds(), evens(), ClosureShift{2}));
    CHECK_FALSE(verify_certificate(odds(), evens(), UniformShift{0}));

    FeVerdict v = fe_decide(mult(3), mult(6));
    FeRefutation bad = *v.refutation;
    std::get<ResidueProof>(bad.exhaustiveness).violations.pop_back();
    CHECK_FALSE(verify_refutation(mult(3), mult(6), bad));

    FeRefutation wrong_f = *v.refutation;
    wrong_f.finite_part = NatSet::finite({1});  // not even a subset of A
    CHECK_FALSE(verify_refutation(mult(3), mult(6), wrong_f));
}

TEST_CASE("fe is a preorder") {
    std::mt19937_64 rng(505);
    for (int i = 0; i < 120; ++i) {
        NatSet a = random_ep(rng, 8, 6);
        CHECK(fe_decide(a, a).embeds_p());
        NatSet b = random_ep(rng, 8, 6), c = random_ep(rng, 8, 6);
        if (fe_decide(a, b).embeds_p() && fe_decide(b, c).embeds_p())
            CHECK(fe_decide(a, c).embeds_p());
    }
    // constructed chains hit the transitive case every time
    for (int i = 0; i < 40; ++i) {
        NatSet c = random_ep(rng, 8, 6);
        NatSet b = random_subset_of(rng, c);
        NatSet a = random_subset_of(rng, b);
        CHECK(fe_decide(a, c).embeds_p());
    }
}

TEST_CASE("subsets embed at shift zero") {
    std::mt19937_64 rng(606);
    for (int i = 0; i < 60; ++i) {
        NatSet b = random_ep(rng);
        NatSet a = random_subset_of(rng, b);
        FeVerdict v = fe_decide(a, b);
        REQUIRE(v.embeds_p());
        // some witness exists; shift 0 in particular
        CHECK((verify_certificate(a, b, ClosureShift{0}) || a.is_empty()));
    }
}
