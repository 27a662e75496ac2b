#ifndef SLRF_REPORT_HPP
#define SLRF_REPORT_HPP

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "slrf/arrayio.hpp"
#include "slrf/solver_core.hpp"
#include "slrf/version.hpp"

namespace slrf {

/// Deterministic float formatting for CSV output (round-trip precision).
inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_double_short(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline void write_diagnostics_csv(const std::string& path,
                                  const SolveDiagnostics& diag)
{
    std::ofstream os(path);
    if (!os)
    {
        throw io_error("cannot open for writing: " + path);
    }
    os << "iteration,objective,constraint1,constraint2,rel_change\n";
    for (const auto& row : diag.history)
    {
        os << row.iteration << "," << format_double(row.objective) << ","
           << format_double(row.constraint1) << ","
           << format_double(row.constraint2) << ","
           << format_double(row.rel_change) << "\n";
    }
}

/// One metric-report row: image, method, snr, hfen, ssim, runtime_s.
inline void append_metric_row(const std::string& path, const std::string& image,
                              const std::string& method, double snr, double hfen,
                              double ssim, double runtime_s)
{
    const bool fresh = !std::ifstream(path).good();
    std::ofstream os(path, std::ios::app);
    if (!os)
    {
        throw io_error("cannot open for writing: " + path);
    }
    if (fresh)
    {
        os << "image,method,snr,hfen,ssim,runtime_s\n";
    }
    os << image << "," << method << "," << format_double(snr) << ","
       << format_double(hfen) << "," << format_double(ssim) << ","
       << format_double_short(runtime_s) << "\n";
}

/// Every artifact-producing run records enough to re-run bit-identically:
/// the config hash (or full parameter echo), the seed, and versions.
inline void write_manifest(const std::string& path,
                           const std::vector<std::string>& lines)
{
    std::ofstream os(path);
    if (!os)
    {
        throw io_error("cannot open for writing: " + path);
    }
    os << "slrf_version = " << kVersion << "\n";
    for (const auto& l : lines)
    {
        os << l << "\n";
    }
}

inline std::string hash_line(const std::string& raw)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64,
                  static_cast<std::uint64_t>(fnv1a64(raw)));
    return std::string("config_hash = ") + buf;
}

} // namespace slrf

#endif // SLRF_REPORT_HPP
