#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "enorbit/classify.hpp"

namespace enorbit {

struct SuiteReport {
    std::size_t cases = 0;
    std::vector<std::string> failures; // serialized counterexamples, canonically sorted
    double millis = 0.0;

    bool passed() const { return failures.empty(); }
    void finish() { std::sort(failures.begin(), failures.end()); }
};

namespace detail {

class StopWatch {
public:
    StopWatch() : start_(std::chrono::steady_clock::now()) {}
    double millis() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::string iv_key(const InvariantVector& iv) {
    std::string s;
    for (const auto& t : iv.traces) s += t.str() + "|";
    s += "/";
    for (const auto& t : iv.pairings) s += t.str() + "|";
    return s;
}

inline std::string sig_key(const EtaSignature& sig) {
    std::string s = std::to_string(sig.k) + ":";
    for (const auto& t : sig.values) s += t.str() + "|";
    return s;
}

inline std::string point_key(const EnhancedPoint& p) {
    return p.X.str() + "#" + p.u.str() + "#" + p.v.str();
}

} // namespace detail

// For each trial, sample (g, p) and a delta = -1 element and assert that the
// quotient map is bit-exactly invariant under both.
inline SuiteReport invariance_suite(const GroupDescriptor& d, std::size_t trials,
                                    std::uint64_t seed) {
    if (trials < 1) fail(errc::unsupported, "invariance_suite needs at least one trial");
    detail::StopWatch sw;
    SuiteReport rep;
    for (std::size_t t = 0; t < trials; ++t) {
        auto [e, p] = sample(d, seed + 0x1000003ULL * t);
        const InvariantVector iv = quotient_map(p);
        ++rep.cases;
        if (quotient_map(act(e, p)) != iv)
            rep.failures.push_back("G-invariance failed at trial " + std::to_string(t) + ": " +
                                   detail::point_key(p));
        const MvwElement twisted = twisted_element(e, d);
        if (quotient_map(act(twisted, p)) != iv)
            rep.failures.push_back("MVW-invariance failed at trial " + std::to_string(t) + ": " +
                                   detail::point_key(p));
    }
    rep.finish();
    rep.millis = sw.millis();
    return rep;
}

// One-parameter degeneration probe: enumerate diagonal cocharacters with
// exponents in [-B, B] (embedded compatibly with the form), decide the t -> 0
// limit symbolically, and return a limit point of strictly smaller orbit
// dimension when one exists. Sound witness of non-closedness, incomplete by
// design.
inline std::optional<EnhancedPoint> degeneration_probe(const EnhancedPoint& p, long bound) {
    if (p.group.kind == GroupKind::GRAM)
        fail(errc::unsupported, "degeneration probes run on the standard kinds");
    p.validate();
    const std::size_t n = p.group.n, m = p.group.m();
    if (n == 0 || bound < 1) return std::nullopt;

    const std::size_t base_dim = orbit_dim(p);
    std::vector<long> a(n, -bound);
    std::set<std::string> seen;
    while (true) {
        // coordinate exponents of the cocharacter
        std::vector<long> e(m, 0);
        switch (p.group.kind) {
            case GroupKind::GL:
                for (std::size_t i = 0; i < n; ++i) e[i] = a[i];
                break;
            case GroupKind::SP:
            case GroupKind::OEVEN:
                for (std::size_t i = 0; i < n; ++i) {
                    e[i] = a[i];
                    e[n + i] = -a[i];
                }
                break;
            case GroupKind::OODD:
                for (std::size_t i = 0; i < n; ++i) {
                    e[1 + i] = a[i];
                    e[1 + n + i] = -a[i];
                }
                break;
            case GroupKind::GRAM: break;
        }

        // The entries of lambda(t).p are monomials c * t^w; the limit exists iff
        // no nonzero entry has w < 0, and it keeps precisely the w = 0 entries.
        bool exists = true;
        EnhancedPoint q = p;
        for (std::size_t i = 0; i < m && exists; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                if (q.X(i, j).is_zero()) continue;
                const long w = e[i] - e[j];
                if (w < 0) {
                    exists = false;
                    break;
                }
                if (w > 0) q.X(i, j) = Scalar(0);
            }
        for (std::size_t i = 0; i < m && exists; ++i) {
            if (q.u(i, 0).is_zero()) continue;
            if (e[i] < 0) exists = false;
            else if (e[i] > 0) q.u(i, 0) = Scalar(0);
        }
        if (exists && p.group.kind == GroupKind::GL)
            for (std::size_t j = 0; j < m; ++j) {
                if (q.v(0, j).is_zero()) continue;
                if (e[j] > 0) { exists = false; break; }
                if (e[j] < 0) q.v(0, j) = Scalar(0);
            }

        if (exists && !(q.X == p.X && q.u == p.u && q.v == p.v)) {
            const std::string key = detail::point_key(q);
            if (seen.insert(key).second && orbit_dim(q) < base_dim) return q;
        }

        std::size_t pos = 0;
        while (pos < n && a[pos] == bound) a[pos++] = -bound;
        if (pos == n) break;
        ++a[pos];
    }
    return std::nullopt;
}

namespace detail {

inline void enumerate_seeds(GroupKind kind, std::size_t n, std::size_t k,
                            const std::vector<Scalar>& grid,
                            const std::function<void(const NilpotentSeed&)>& visit) {
    NilpotentSeed s{kind, n, k, {}};
    const std::size_t count = s.expected_coeff_count();
    s.coeffs.assign(count, Scalar(0));
    if (count == 0) {
        visit(s);
        return;
    }
    std::vector<std::size_t> idx(count, 0);
    while (true) {
        for (std::size_t i = 0; i < count; ++i) s.coeffs[i] = grid[idx[i]];
        bool valid = true;
        try {
            s.validate();
        } catch (const Error&) {
            valid = false;
        }
        if (valid) visit(s);
        std::size_t pos = 0;
        while (pos < count && idx[pos] == grid.size() - 1) idx[pos++] = 0;
        if (pos == count) break;
        ++idx[pos];
    }
}

} // namespace detail

// Enumerates every canonical nilpotent seed over the grid and asserts the
// classification facts: closedness, stabilizer dimensions, separation of
// orbits by the eta-signature, and consistency with the degeneration probe.
inline SuiteReport classification_crosscheck(std::size_t max_rank,
                                             const std::vector<Scalar>& grid,
                                             bool run_probes = true) {
    if (max_rank > 4) fail(errc::unsupported, "crosscheck budget is rank <= 4");
    if (grid.empty()) fail(errc::unsupported, "empty coefficient grid");
    detail::StopWatch sw;
    SuiteReport rep;
    for (GroupKind kind : {GroupKind::GL, GroupKind::SP, GroupKind::OODD, GroupKind::OEVEN}) {
        for (std::size_t n = 0; n <= max_rank; ++n) {
            std::map<std::string, std::string> iv_to_sig;
            std::map<std::string, std::string> sig_to_iv;
            for (std::size_t k = 0; k <= n; ++k) {
                detail::enumerate_seeds(kind, n, k, grid, [&](const NilpotentSeed& s) {
                    ++rep.cases;
                    const EnhancedPoint p = build_nilpotent(s);
                    const std::string where =
                        kind_name(kind) + " n=" + std::to_string(n) + " k=" + std::to_string(k);

                    const ClassificationReport cr = classify(p);
                    if (!cr.closed)
                        rep.failures.push_back("canonical seed not closed: " + where + " " +
                                               detail::point_key(p));
                    const auto pred = predicted_stabilizer_for_seed(s);
                    if (cr.stabilizer_dim != pred.dim)
                        rep.failures.push_back(
                            "stabilizer mismatch: " + where + " got " +
                            std::to_string(cr.stabilizer_dim) + " expected " +
                            std::to_string(pred.dim));

                    const InvariantVector iv = quotient_map(p);
                    const std::string ik = detail::iv_key(iv);
                    const std::string sk = detail::sig_key(eta_signature(iv));
                    auto [it1, fresh1] = iv_to_sig.try_emplace(ik, sk);
                    if (!fresh1 && it1->second != sk)
                        rep.failures.push_back("equal invariants, distinct signatures: " + where);
                    auto [it2, fresh2] = sig_to_iv.try_emplace(sk, ik);
                    if (!fresh2 && it2->second != ik)
                        rep.failures.push_back("equal signatures, distinct invariants: " + where);

                    if (run_probes) {
                        auto witness = degeneration_probe(p, 1);
                        if (witness)
                            rep.failures.push_back(
                                "degeneration witness against a closed orbit: " + where + " -> " +
                                detail::point_key(*witness));
                    }
                });
            }
        }
    }
    rep.finish();
    rep.millis = sw.millis();
    return rep;
}

} // namespace enorbit
