#pragma once

// Exhaustive composition sweep: for every composition with at most max_parts
// parts of size at most max_part, check positivity / unimodality /
// log-concavity of the reduced polynomial f_c. The checks run on the integer
// rescaling det(beta) * k! ... * f_i, which has the same sign pattern, so the
// hot loop never touches rationals. Work is statically chunked over the
// enumeration index space, so results and CSV bytes are independent of the
// worker count.

#include "compoly/composition.hpp"
#include "compoly/poly.hpp"
#include "compoly/rational.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <thread>
#include <vector>

namespace compoly {

// all compositions with k <= max_parts and parts in 1..max_part,
// lexicographic by (k, parts)
inline std::vector<std::vector<unsigned>> enumerate_sweep(unsigned max_parts,
                                                          unsigned max_part) {
    std::vector<std::vector<unsigned>> out;
    for (unsigned k = 1; k <= max_parts; ++k) {
        std::vector<unsigned> parts(k, 1);
        while (true) {
            out.push_back(parts);
            std::size_t i = k;
            while (i > 0 && parts[i - 1] == max_part) parts[--i] = 1;
            if (i == 0) break;
            ++parts[i - 1];
        }
    }
    return out;
}

namespace detail {

struct PascalTable {
    std::vector<std::vector<Int>> c;
    explicit PascalTable(std::size_t n) : c(n + 1) {
        for (std::size_t i = 0; i <= n; ++i) {
            c[i].assign(i + 1, Int(1));
            for (std::size_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    const Int& operator()(std::size_t n, std::size_t k) const { return c[n][k]; }
};

}  // namespace detail

struct SweepRow {
    std::vector<unsigned> parts;
    unsigned n = 0;
    CoeffChecks checks;
    std::vector<Int> scaled_f;  // positive multiple of the f coefficients
    Int scale = 1;              // scaled_f[i] / scale = f_i
};

// Integer-only evaluation of the reduced polynomial's coefficient sequence:
// f_i = sum_{j=0..k, beta_j <= i} multichoose(k, i - beta_j) / D_j with
// beta_0 = 0 and D_j = prod_{l != j}(beta_l - beta_j), so det(beta) * f_i is
// the integer sum of cof_j = det(beta) / D_j times binomial coefficients.
inline SweepRow sweep_row(const std::vector<unsigned>& parts,
                          const detail::PascalTable& pascal) {
    SweepRow row;
    row.parts = parts;
    const std::size_t k = parts.size();
    std::vector<unsigned> beta(k + 1, 0);
    unsigned n = 0;
    for (std::size_t i = 0; i < k; ++i) beta[i + 1] = (n += parts[i]);
    row.n = n;

    Int det = 1;  // positive: the beta are strictly increasing
    for (std::size_t l = 0; l <= k; ++l)
        for (std::size_t m = l + 1; m <= k; ++m) det *= Int(beta[m]) - Int(beta[l]);
    std::vector<Int> cof(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        Int denom = 1;
        for (std::size_t l = 0; l <= k; ++l)
            if (l != j) denom *= Int(beta[l]) - Int(beta[j]);
        cof[j] = det / denom;
    }

    const unsigned deg = n - static_cast<unsigned>(k);
    row.scaled_f.assign(deg + 1, Int(0));
    for (std::size_t j = 0; j <= k; ++j)
        for (unsigned i = beta[j]; i <= deg; ++i)
            row.scaled_f[i] += cof[j] * pascal(k + i - beta[j] - 1, k - 1);
    row.scale = det;
    row.checks = coeff_checks_seq(row.scaled_f);
    return row;
}

inline std::string sweep_csv_line(const SweepRow& row) {
    std::string line = std::to_string(row.parts.size()) + ",\"";
    for (std::size_t i = 0; i < row.parts.size(); ++i) {
        if (i) line += ',';
        line += std::to_string(row.parts[i]);
    }
    line += "\"," + std::to_string(row.n);
    line += row.checks.positive ? ",1" : ",0";
    line += row.checks.unimodal ? ",1" : ",0";
    line += row.checks.log_concave ? ",1" : ",0";
    line += ",\"";
    for (std::size_t i = 0; i < row.scaled_f.size(); ++i) {
        if (i) line += ' ';
        line += to_string(ratio(row.scaled_f[i], row.scale));
    }
    line += "\"\n";
    return line;
}

struct SweepSummary {
    std::size_t total = 0;
    std::vector<std::vector<unsigned>> positivity_failures;
    std::vector<std::vector<unsigned>> unimodality_failures;
    std::vector<std::vector<unsigned>> logconcavity_failures;
    double seconds = 0;
    std::string csv;  // filled only when requested

    bool clean() const {
        return positivity_failures.empty() && unimodality_failures.empty() &&
               logconcavity_failures.empty();
    }
};

inline SweepSummary run_sweep(unsigned max_parts, unsigned max_part, unsigned jobs,
                              bool want_csv) {
    auto start = std::chrono::steady_clock::now();
    auto comps = enumerate_sweep(max_parts, max_part);
    SweepSummary out;
    out.total = comps.size();

    jobs = std::max(1u, jobs);
    struct ChunkResult {
        std::string csv;
        std::vector<std::vector<unsigned>> pos, uni, logc;
    };
    std::vector<ChunkResult> results(jobs);
    std::vector<std::thread> pool;
    const std::size_t chunk = (comps.size() + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&, w] {
            detail::PascalTable pascal(static_cast<std::size_t>(max_parts) * max_part +
                                       max_parts);
            auto& res = results[w];
            const std::size_t lo = w * chunk, hi = std::min(comps.size(), lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) {
                auto row = sweep_row(comps[i], pascal);
                if (!row.checks.positive) res.pos.push_back(comps[i]);
                if (!row.checks.unimodal) res.uni.push_back(comps[i]);
                if (!row.checks.log_concave) res.logc.push_back(comps[i]);
                if (want_csv) res.csv += sweep_csv_line(row);
            }
        });
    for (auto& t : pool) t.join();

    if (want_csv) out.csv = "k,parts,n,positive,unimodal,logconcave,f_coeffs\n";
    for (auto& res : results) {
        auto move_into = [](auto& dst, auto& src) {
            dst.insert(dst.end(), src.begin(), src.end());
        };
        move_into(out.positivity_failures, res.pos);
        move_into(out.unimodality_failures, res.uni);
        move_into(out.logconcavity_failures, res.logc);
        if (want_csv) out.csv += res.csv;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace compoly
