#include "bvc/protocol.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>

namespace bvc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic draw in [lo, hi] keyed on (seed, t, from, to, coord), so
// repeated runs agree bit-for-bit across platforms. The draw is quantized to
// a 64-step grid: injecting fresh large denominators every round would
// compound through the exact crossing-point arithmetic and blow state sizes
// past desk scale within a handful of iterations.
Rational keyed_draw(std::uint64_t seed, std::uint64_t t, int from, int to, int coord,
                    const Rational& lo, const Rational& hi) {
    std::uint64_t h = splitmix64(seed ^ t);
    h = splitmix64(h ^ (static_cast<std::uint64_t>(from) * 0x100000001b3ULL));
    h = splitmix64(h ^ (static_cast<std::uint64_t>(to) * 0xc2b2ae3d27d4eb4fULL));
    h = splitmix64(h ^ static_cast<std::uint64_t>(coord));
    Rational frac(static_cast<unsigned long>(h % 65), 64ul);
    frac.canonicalize();
    return lo + (hi - lo) * frac;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void Scenario::validate() const {
    int n = graph.n();
    require(n >= 2, "scenario has no graph");
    require(d >= 1, "dimension must be at least 1");
    require(f >= 0, "fault bound must be non-negative");
    require(epsilon > 0, "epsilon must be positive");
    require(mu <= U, "range must satisfy mu <= U");
    require(static_cast<int>(fault_set.size()) <= f, "fault set larger than the fault bound");
    for (int v : fault_set)
        require(v >= 1 && v <= n, "fault set member out of range");
    for (int v = 1; v <= n; ++v) {
        if (fault_set.count(v)) {
            require(!inputs.count(v), "input supplied for a faulty process");
            continue;
        }
        auto it = inputs.find(v);
        require(it != inputs.end(), "missing input for a fault-free process");
        require(it->second.dim() == d, "input dimension mismatch");
        for (const Rational& c : it->second.coords)
            require(mu <= c && c <= U, "input coordinate outside [mu, U]");
    }
    require(inputs.size() + fault_set.size() == static_cast<std::size_t>(n),
            "inputs must cover exactly the fault-free processes");
    for (const auto& [v, spec] : adversaries) {
        require(fault_set.count(v) != 0, "adversary spec attached to a fault-free process");
        switch (spec.kind) {
            case AdversarySpec::Kind::Silent:
                break;
            case AdversarySpec::Kind::Equivocate:
                for (const auto& [target, p] : spec.per_target) {
                    require(target >= 1 && target <= n, "equivocation target out of range");
                    require(p.dim() == d, "equivocation point dimension mismatch");
                }
                break;
            case AdversarySpec::Kind::FixedPartition: {
                require(static_cast<int>(spec.partition_targets.size()) <= d + 1,
                        "more partition slots than basis vectors");
                std::set<int> seen;
                for (const auto& slot : spec.partition_targets)
                    for (int target : slot) {
                        require(target >= 1 && target <= n, "partition target out of range");
                        require(seen.insert(target).second, "partition targets overlap");
                    }
                break;
            }
            case AdversarySpec::Kind::RandomInRange:
                break;
            case AdversarySpec::Kind::Custom:
                for (const auto& [key, p] : spec.script) {
                    require(key.second >= 1 && key.second <= n, "scripted target out of range");
                    require(p.dim() == d, "scripted point dimension mismatch");
                }
                break;
        }
    }
    if (termination.kind == TerminationPolicy::Kind::EmpiricalSpread)
        require(termination.cap >= 1, "spread-termination cap must be at least 1");
}

std::vector<int> Scenario::fault_free() const {
    std::vector<int> out;
    for (int v = 1; v <= graph.n(); ++v)
        if (!fault_set.count(v)) out.push_back(v);
    return out;
}

const std::map<int, Point>& ExecutionTrace::states_after(std::uint64_t t) const {
    if (t == 0) return initial_states;
    if (t > rounds.size()) throw std::out_of_range("iteration beyond the recorded trace");
    return rounds[t - 1].states;
}

std::vector<Rational> ExecutionTrace::spread_after(std::uint64_t t) const {
    const auto& states = states_after(t);
    if (states.empty()) return {};
    int d = states.begin()->second.dim();
    std::vector<Rational> out(d, Rational(0));
    for (int k = 0; k < d; ++k) {
        Rational lo = states.begin()->second[k];
        Rational hi = lo;
        for (const auto& [v, p] : states) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        out[k] = hi - lo;
    }
    return out;
}

Point e_vector(int d, int k, const Rational& eps) {
    if (k < 0 || k > d) throw std::invalid_argument("basis index out of range");
    Point p = zero_point(d);
    if (k >= 1) p.coords[k - 1] = 2 * eps;
    return p;
}

namespace {

Point adversary_value(const Scenario& sc, const AdversarySpec& spec,
                      std::uint64_t t, int from, int to) {
    switch (spec.kind) {
        case AdversarySpec::Kind::Silent:
            return zero_point(sc.d);
        case AdversarySpec::Kind::Equivocate: {
            auto it = spec.per_target.find(to);
            return it == spec.per_target.end() ? zero_point(sc.d) : it->second;
        }
        case AdversarySpec::Kind::FixedPartition: {
            for (std::size_t k = 0; k < spec.partition_targets.size(); ++k) {
                const auto& slot = spec.partition_targets[k];
                if (std::find(slot.begin(), slot.end(), to) != slot.end())
                    return e_vector(sc.d, static_cast<int>(k), sc.epsilon);
            }
            return zero_point(sc.d);
        }
        case AdversarySpec::Kind::RandomInRange: {
            Point p = zero_point(sc.d);
            for (int k = 0; k < sc.d; ++k)
                p.coords[k] = keyed_draw(sc.seed, t, from, to, k, sc.mu, sc.U);
            return p;
        }
        case AdversarySpec::Kind::Custom: {
            auto it = spec.script.find({t, to});
            return it == spec.script.end() ? zero_point(sc.d) : it->second;
        }
    }
    throw std::logic_error("unhandled adversary kind");
}

}  // namespace

std::map<std::pair<int, int>, Point> build_round_messages(
    const Scenario& sc, const std::map<int, Point>& states, std::uint64_t t) {
    static const AdversarySpec kSilent{};
    std::map<std::pair<int, int>, Point> out;
    for (int to = 1; to <= sc.graph.n(); ++to) {
        if (sc.fault_set.count(to)) continue;  // deliveries to faulty processes are opaque
        for (int from : sc.graph.in_neighbors(to)) {
            if (sc.fault_set.count(from)) {
                auto it = sc.adversaries.find(from);
                const AdversarySpec& spec = it == sc.adversaries.end() ? kSilent : it->second;
                out[{from, to}] = adversary_value(sc, spec, t, from, to);
            } else {
                out[{from, to}] = states.at(from);
            }
        }
    }
    return out;
}

Point update_step(const Point& v_prev, const std::vector<Point>& received, int d, int f) {
    int need = (d + 1) * f + 1;
    int m = static_cast<int>(received.size());
    if (m < need) return v_prev;

    std::vector<Point> z_points;
    std::vector<int> idx(need);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        std::vector<Point> subset;
        subset.reserve(need);
        for (int i : idx) subset.push_back(received[i]);
        z_points.push_back(tverberg_point(subset, f).point);

        int i = need - 1;
        while (i >= 0 && idx[i] == m - need + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }

    Rational weight(1ul, static_cast<unsigned long>(1 + z_points.size()));
    weight.canonicalize();
    Point sum = v_prev;
    for (const Point& z : z_points) sum += z;
    return weight * sum;
}

namespace {

bool spread_below(const std::map<int, Point>& states, int d, const Rational& eps) {
    if (states.empty()) return true;
    for (int k = 0; k < d; ++k) {
        Rational lo = states.begin()->second[k];
        Rational hi = lo;
        for (const auto& [v, p] : states) {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        if (hi - lo >= eps) return false;
    }
    return true;
}

}  // namespace

ExecutionTrace run_execution(const Scenario& sc) {
    sc.validate();

    ExecutionTrace trace;
    trace.initial_states = sc.inputs;

    std::uint64_t target = 0;
    bool empirical = false;
    switch (sc.termination.kind) {
        case TerminationPolicy::Kind::PaperBound: {
            TEndResult te = compute_t_end(sc.graph, sc.d, sc.f, sc.mu, sc.U, sc.epsilon);
            if (!te.value.fits_ulong_p())
                throw std::domain_error(
                    "certified round bound " + te.value.get_str() +
                    " exceeds the executable iteration range");
            target = te.value.get_ui();
            break;
        }
        case TerminationPolicy::Kind::EmpiricalSpread:
            empirical = true;
            target = sc.termination.cap;
            break;
        case TerminationPolicy::Kind::FixedRounds:
            target = sc.termination.fixed_rounds;
            break;
    }

    std::map<int, Point> states = sc.inputs;
    if (empirical && spread_below(states, sc.d, sc.epsilon)) {
        trace.converged = true;
        return trace;
    }

    for (std::uint64_t t = 1; t <= target; ++t) {
        RoundRecord rec;
        rec.messages = build_round_messages(sc, states, t);

        for (const auto& [v, prev] : states) {
            std::vector<Point> received;
            for (int from : sc.graph.in_neighbors(v))
                received.push_back(rec.messages.at({from, v}));
            rec.states[v] = update_step(prev, received, sc.d, sc.f);
        }

        states = rec.states;
        trace.rounds.push_back(std::move(rec));
        trace.rounds_executed = t;

        if (empirical && spread_below(states, sc.d, sc.epsilon)) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

Rational compute_beta(int n, int d, int f) {
    if (n < 2) throw std::invalid_argument("need at least two processes");
    if (f == 0) {
        Rational b(1, static_cast<unsigned long>(n));
        b.canonicalize();
        return b;
    }
    BigInt den = BigInt(n) * BigInt(n) * (1 + binomial(n, (d + 1) * f + 1));
    Rational b(BigInt(1), den);
    b.canonicalize();
    return b;
}

namespace {

class Mpf {
public:
    explicit Mpf(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpf() { mpfr_clear(v_); }
    Mpf(const Mpf&) = delete;
    Mpf& operator=(const Mpf&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

// q^k == rhs, decided exactly. Cheap: equality forces den(q)^k == den(rhs),
// which bounds k by the denominator bit sizes.
bool power_equals(const Rational& q, const BigInt& k, const Rational& rhs) {
    if (k == 0) return rhs == 1;
    if (!k.fits_ulong_p()) return false;
    unsigned long ku = k.get_ui();
    std::size_t bq = mpz_sizeinbase(q.get_den().get_mpz_t(), 2);  // >= 2 since 0 < q < 1
    std::size_t br = mpz_sizeinbase(rhs.get_den().get_mpz_t(), 2);
    if (ku > br / std::max<std::size_t>(bq - 1, 1) + 1) return false;
    return pow_rational(q, ku) == rhs;
}

std::string magnitude_text(double log10_bound) {
    std::ostringstream os;
    os << "10^" << static_cast<long long>(log10_bound) << " blocks";
    return os.str();
}

// Smallest k >= 0 with q^k < rhs for 0 < q < 1, where [fill_x] writes a
// directed-rounding enclosure of x = 1 - q and [tie] decides q^k == rhs
// exactly. The answer is floor(log(rhs)/log(q)) + 1 whenever rhs <= 1
// (including exact ties), so the search only has to pin that floor: enclose
// L = log(rhs)/log(q), and when the enclosure straddles one integer M,
// resolve L == M with the exact tie test instead of more precision.
BigInt certified_block_count(
    const std::function<void(mpfr_prec_t, mpfr_ptr, mpfr_ptr)>& fill_x,
    const Rational& rhs,
    const std::function<bool(const BigInt&)>& tie,
    std::uint64_t max_bits) {
    if (rhs > 1) return 0;

    for (mpfr_prec_t prec = 128;; prec *= 2) {
        Mpf xlo(prec), xhi(prec), tmp(prec);
        fill_x(prec, xlo.get(), xhi.get());

        // log(1/q) = -log1p(-x), increasing in x; log1p keeps precision when
        // x is tiny, where forming q = 1 - x directly would cancel.
        Mpf lnq_lo(prec), lnq_hi(prec);
        mpfr_neg(tmp.get(), xlo.get(), MPFR_RNDN);
        mpfr_log1p(lnq_lo.get(), tmp.get(), MPFR_RNDU);
        mpfr_neg(lnq_lo.get(), lnq_lo.get(), MPFR_RNDN);
        mpfr_neg(tmp.get(), xhi.get(), MPFR_RNDN);
        mpfr_log1p(lnq_hi.get(), tmp.get(), MPFR_RNDD);
        mpfr_neg(lnq_hi.get(), lnq_hi.get(), MPFR_RNDN);

        Mpf rl(prec), rh(prec), lnr_lo(prec), lnr_hi(prec);
        mpfr_set_q(rl.get(), rhs.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(rh.get(), rhs.get_mpq_t(), MPFR_RNDU);
        mpfr_log(lnr_hi.get(), rl.get(), MPFR_RNDD);
        mpfr_neg(lnr_hi.get(), lnr_hi.get(), MPFR_RNDN);
        mpfr_log(lnr_lo.get(), rh.get(), MPFR_RNDU);
        mpfr_neg(lnr_lo.get(), lnr_lo.get(), MPFR_RNDN);
        if (mpfr_sgn(lnr_lo.get()) < 0) mpfr_set_zero(lnr_lo.get(), 1);  // rhs <= 1

        Mpf L_lo(prec), L_hi(prec);
        if (mpfr_zero_p(lnq_lo.get())) {
            mpfr_set_inf(L_hi.get(), 1);  // x underflowed: no finite upper bound
        } else {
            mpfr_div(L_hi.get(), lnr_hi.get(), lnq_lo.get(), MPFR_RNDU);
        }
        mpfr_div(L_lo.get(), lnr_lo.get(), lnq_hi.get(), MPFR_RNDD);

        if (mpfr_inf_p(L_hi.get()) ||
            (!mpfr_zero_p(L_hi.get()) &&
             mpfr_get_exp(L_hi.get()) > static_cast<mpfr_exp_t>(max_bits))) {
            Mpf lg(64);
            double est;
            if (mpfr_inf_p(L_hi.get()) && !mpfr_zero_p(L_lo.get())) {
                mpfr_log10(lg.get(), L_lo.get(), MPFR_RNDU);
                est = mpfr_get_d(lg.get(), MPFR_RNDU);
            } else if (!mpfr_inf_p(L_hi.get())) {
                mpfr_log10(lg.get(), L_hi.get(), MPFR_RNDU);
                est = mpfr_get_d(lg.get(), MPFR_RNDU);
            } else {
                est = 1e18;  // beyond the floating-point exponent range entirely
            }
            throw TEndOverflow(magnitude_text(est), est);
        }

        mpfr_exp_t top = mpfr_zero_p(L_hi.get()) ? 1 : mpfr_get_exp(L_hi.get());
        if (top + 8 > static_cast<mpfr_exp_t>(prec)) continue;  // floor needs headroom

        Mpf flo(prec), fhi(prec);
        mpfr_floor(flo.get(), L_lo.get());
        mpfr_floor(fhi.get(), L_hi.get());
        if (mpfr_equal_p(flo.get(), fhi.get())) {
            BigInt m;
            mpfr_get_z(m.get_mpz_t(), flo.get(), MPFR_RNDZ);
            return m + 1;
        }

        Mpf diff(prec);
        mpfr_sub(diff.get(), fhi.get(), flo.get(), MPFR_RNDN);
        if (mpfr_cmp_ui(diff.get(), 1) == 0) {
            BigInt boundary;
            mpfr_get_z(boundary.get_mpz_t(), fhi.get(), MPFR_RNDZ);
            if (tie(boundary)) return boundary + 1;
            // L != boundary: the enclosure will eventually fall on one side.
        }
    }
}

}  // namespace

BigInt smallest_block_count(const Rational& q, const Rational& rhs) {
    if (!(q > 0 && q < 1)) throw std::invalid_argument("contraction factor must lie in (0, 1)");
    if (rhs <= 0) throw std::invalid_argument("threshold must be positive");
    Rational x = 1 - q;
    auto fill_x = [&x](mpfr_prec_t, mpfr_ptr lo, mpfr_ptr hi) {
        mpfr_set_q(lo, x.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi, x.get_mpq_t(), MPFR_RNDU);
    };
    auto tie = [&q, &rhs](const BigInt& k) { return power_equals(q, k, rhs); };
    return certified_block_count(fill_x, rhs, tie, 1u << 24);
}

TEndResult compute_t_end(const Digraph& g, int d, int f, const Rational& mu,
                         const Rational& U, const Rational& epsilon,
                         std::uint64_t max_bits) {
    if (d < 1) throw std::invalid_argument("dimension must be at least 1");
    if (f < 0) throw std::invalid_argument("fault bound must be non-negative");
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    if (mu > U) throw std::invalid_argument("range must satisfy mu <= U");

    TEndResult out;
    out.r = count_reduced_graphs_max(g, d, f);
    out.beta = compute_beta(g.n(), d, f);
    out.block_length = out.r * g.n();

    Rational norm = std::max(abs_rational(mu), abs_rational(U));
    if (norm == 0) {
        out.blocks = 0;
        out.value = 1;
        return out;
    }
    Rational rhs = epsilon / (Rational(static_cast<unsigned long>(g.n())) * norm);

    const BigInt& rn = out.block_length;
    auto fill_x = [b = out.beta, &rn](mpfr_prec_t prec, mpfr_ptr lo, mpfr_ptr hi) {
        Mpf blo(prec), bhi(prec);
        mpfr_set_q(blo.get(), b.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(bhi.get(), b.get_mpq_t(), MPFR_RNDU);
        mpfr_pow_z(lo, blo.get(), rn.get_mpz_t(), MPFR_RNDD);
        mpfr_pow_z(hi, bhi.get(), rn.get_mpz_t(), MPFR_RNDU);
    };

    // Ties need den(rhs) to be a perfect power of den(1 - beta^(rn)), whose
    // bit size grows linearly in rn; materialize the exact base only when
    // that stays small, otherwise a tie is impossible by size.
    std::size_t beta_den_bits = mpz_sizeinbase(out.beta.get_den().get_mpz_t(), 2);
    std::size_t rhs_den_bits = mpz_sizeinbase(rhs.get_den().get_mpz_t(), 2);
    std::uint64_t budget = std::max<std::uint64_t>(1'000'000, rhs_den_bits + 64);
    bool materializable =
        rn.fits_ulong_p() &&
        static_cast<std::uint64_t>(beta_den_bits - 1) * rn.get_ui() <= budget;

    std::function<bool(const BigInt&)> tie;
    if (materializable) {
        Rational q = 1 - pow_rational(out.beta, rn.get_ui());
        tie = [q, rhs](const BigInt& k) { return power_equals(q, k, rhs); };
    } else {
        tie = [&rhs](const BigInt& k) { return k == 0 && rhs == 1; };
    }

    try {
        out.blocks = certified_block_count(fill_x, rhs, tie, max_bits);
    } catch (const TEndOverflow& e) {
        double extra = mpz_sizeinbase(rn.get_mpz_t(), 10);
        double total = e.log10_bound + extra;
        throw TEndOverflow(magnitude_text(total) + " of length " + rn.get_str(), total);
    }

    out.value = out.blocks == 0 ? BigInt(1) : BigInt(out.blocks * rn);
    return out;
}

Scenario scenario_from_nc_witness(const Digraph& g, int d, int f,
                                  const PartitionWitness& witness,
                                  const Rational& epsilon, std::uint64_t rounds) {
    Scenario sc;
    sc.graph = g;
    sc.d = d;
    sc.f = f;
    sc.epsilon = epsilon;
    sc.mu = 0;
    sc.U = 2 * epsilon;
    sc.termination.kind = TerminationPolicy::Kind::FixedRounds;
    sc.termination.fixed_rounds = rounds;

    std::vector<std::vector<int>> v_parts;
    for (int k = 0;; ++k) {
        const auto* part = witness.find("V" + std::to_string(k));
        if (!part) break;
        v_parts.push_back(*part);
    }
    if (v_parts.empty()) throw std::invalid_argument("witness has no V parts");
    const auto* c_part = witness.find("C");
    const auto* f_part = witness.find("F");

    for (std::size_t k = 0; k < v_parts.size(); ++k)
        for (int v : v_parts[k])
            sc.inputs[v] = e_vector(d, static_cast<int>(k), epsilon);
    if (c_part)
        for (int v : *c_part) sc.inputs[v] = zero_point(d);
    if (f_part)
        for (int v : *f_part) {
            sc.fault_set.insert(v);
            AdversarySpec spec;
            spec.kind = AdversarySpec::Kind::FixedPartition;
            spec.partition_targets = v_parts;
            sc.adversaries[v] = spec;
        }

    sc.validate();
    return sc;
}

}  // namespace bvc
