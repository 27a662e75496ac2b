// Command line front end: renders phantoms, builds sampling masks, degrades
// and restores Fourier samples, and evaluates restorations.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "slrf/annihilation.hpp"
#include "slrf/arrayio.hpp"
#include "slrf/baselines.hpp"
#include "slrf/bregman.hpp"
#include "slrf/config.hpp"
#include "slrf/dft.hpp"
#include "slrf/diffops.hpp"
#include "slrf/hankel.hpp"
#include "slrf/irls.hpp"
#include "slrf/metrics.hpp"
#include "slrf/phantom.hpp"
#include "slrf/pipeline.hpp"
#include "slrf/report.hpp"
#include "slrf/sampling.hpp"
#include "slrf/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace slrf;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

int cmd_phantom(const std::string& spec_path, int n1, int n2,
                const std::string& out, const std::string& image_out,
                const std::string& pgm_out)
{
    const PiecewiseLinear2D model = parse_phantom_file(spec_path);
    const CenteredGrid grid = make_centered_grid(n1, n2);
    const SampleField field = fourier_samples_2d(model, grid);
    write_field(out, field);
    SpatialImage image;
    if (!image_out.empty() || !pgm_out.empty())
    {
        image = dft_inverse(field);
    }
    if (!image_out.empty())
    {
        write_image(image_out, image);
    }
    if (!pgm_out.empty())
    {
        write_pgm16(pgm_out, image);
    }
    std::ifstream spec_file(spec_path);
    std::ostringstream spec_raw;
    spec_raw << spec_file.rdbuf();
    write_manifest(out + ".manifest",
                   {"command = phantom", "spec = " + spec_path,
                    hash_line(spec_raw.str()),
                    "n1 = " + std::to_string(n1), "n2 = " + std::to_string(n2)});
    return kExitOk;
}

int cmd_mask(int n1, int n2, double fraction, std::uint64_t seed, double decay,
             int center_radius, const std::string& out)
{
    const CenteredGrid grid = make_centered_grid(n1, n2);
    const SamplingMask mask =
        variable_density_mask(grid, fraction, seed, decay, center_radius);
    write_mask_bytes(out, grid, mask.bytes());
    write_manifest(out + ".manifest",
                   {"command = mask", "n1 = " + std::to_string(n1),
                    "n2 = " + std::to_string(n2),
                    "fraction = " + format_double(fraction),
                    "seed = " + std::to_string(seed),
                    "decay = " + format_double(decay),
                    "center_radius = " + std::to_string(center_radius),
                    "kept = " + std::to_string(mask.count())});
    return kExitOk;
}

int cmd_degrade(const std::string& field_path, const std::string& mask_path,
                double sigma, std::uint64_t seed, const std::string& out)
{
    const SampleField field = read_field(field_path);
    CenteredGrid grid;
    const auto bytes = read_mask_bytes(mask_path, grid);
    const SamplingMask mask = SamplingMask::from_bytes(grid, bytes);
    const Eigen::VectorXcd observed = degrade(field, mask, sigma, seed);
    SampleField full(0, grid);
    for (std::int64_t i = 0; i < mask.count(); ++i)
    {
        full.comp(0)(mask.kept[static_cast<std::size_t>(i)]) = observed(i);
    }
    write_field(out, full);
    write_manifest(out + ".manifest",
                   {"command = degrade", "field = " + field_path,
                    "mask = " + mask_path, "sigma = " + format_double(sigma),
                    "seed = " + std::to_string(seed)});
    return kExitOk;
}

struct MethodOutput {
    Method method = Method::zerofill;
    SampleField v_hat;
    SpatialImage image;
    SolveDiagnostics diagnostics;
    double runtime_s = 0.0;
};

MethodOutput run_method(Method method, const RestorationProblem& problem,
                        const ExperimentConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    MethodOutput out;
    out.method = method;
    switch (method)
    {
    case Method::zerofill: {
        out.v_hat = problem.adjoint_observed();
        out.image = dft_inverse(out.v_hat);
        break;
    }
    case Method::tgv: {
        TgvResult r = solve_tgv_discrete(problem, cfg.tgv);
        out.v_hat = std::move(r.v_hat);
        out.image = std::move(r.u);
        out.diagnostics = std::move(r.diagnostics);
        break;
    }
    case Method::infconv: {
        InfconvResult r = solve_infconv_discrete(problem, cfg.infconv);
        out.v_hat = r.v1_hat;
        out.v_hat += r.v2_hat;
        out.image = std::move(r.u);
        out.diagnostics = std::move(r.diagnostics);
        break;
    }
    case Method::framelet: {
        FrameletResult r = solve_framelet_analysis(problem, cfg.framelet);
        out.v_hat = std::move(r.v_hat);
        out.image = std::move(r.u);
        out.diagnostics = std::move(r.diagnostics);
        break;
    }
    case Method::slrm_irls: {
        TgvResult pre = solve_tgv_discrete(problem, cfg.tgv);
        IrlsResult r =
            solve_irls_slrm(problem, pre.v_hat, pre.p_hat, cfg.irls_slrm);
        out.v_hat = std::move(r.first);
        out.image = dft_inverse(out.v_hat);
        out.diagnostics = std::move(r.diagnostics);
        break;
    }
    case Method::gslr_irls: {
        InfconvResult pre = solve_infconv_discrete(problem, cfg.infconv);
        IrlsResult r =
            solve_irls_gslr(problem, pre.v1_hat, pre.v2_hat, cfg.irls_gslr);
        out.v_hat = r.first;
        out.v_hat += r.second;
        out.image = dft_inverse(out.v_hat);
        out.diagnostics = std::move(r.diagnostics);
        break;
    }
    case Method::proposed: {
        PipelineResult r = pipeline_proposed(problem, cfg.pipeline);
        out.v_hat = std::move(r.v);
        out.image = std::move(r.image);
        out.diagnostics = std::move(r.diagnostics);
        break;
    }
    }
    out.runtime_s = seconds_since(t0);
    return out;
}

int cmd_restore(const std::string& config_path, int jobs)
{
    const KeyValueConfig raw = KeyValueConfig::parse_file(config_path);
    const ExperimentConfig cfg = ExperimentConfig::from(raw);
    const CenteredGrid grid = make_centered_grid(cfg.n1, cfg.n2);

    SampleField truth;
    bool have_truth = false;
    if (!cfg.phantom_path.empty())
    {
        truth = fourier_samples_2d(parse_phantom_file(cfg.phantom_path), grid);
        have_truth = true;
    }
    else
    {
        truth = read_field(cfg.field_path);
        if (!(truth.grid() == grid))
        {
            throw config_error("field extents do not match [problem] n1/n2");
        }
        have_truth = true; // a supplied field doubles as the reference
    }

    const SamplingMask mask = variable_density_mask(
        grid, cfg.fraction, cfg.seed, cfg.mask_decay, cfg.mask_center_radius);
    const Eigen::VectorXcd observed = degrade(truth, mask, cfg.sigma, cfg.seed + 1);
    const RestorationProblem problem{grid, mask, observed,
                                     make_centered_grid(cfg.support1, cfg.support2)};

    fs::create_directories(cfg.outdir);
    const auto path_in = [&](const std::string& name) {
        return (fs::path(cfg.outdir) / name).string();
    };

    write_mask_bytes(path_in("mask.bin"), grid, mask.bytes());
    {
        SampleField full(0, grid);
        for (std::int64_t i = 0; i < mask.count(); ++i)
        {
            full.comp(0)(mask.kept[static_cast<std::size_t>(i)]) = observed(i);
        }
        write_field(path_in("observed.bin"), full);
    }
    SpatialImage truth_image;
    if (have_truth)
    {
        write_field(path_in("truth_field.bin"), truth);
        truth_image = dft_inverse(truth);
        write_image(path_in("truth_image.bin"), truth_image);
    }

    // Run the requested methods, optionally a few at a time. Results are
    // written afterwards in config order so outputs are reproducible.
    std::vector<MethodOutput> results(cfg.methods.size());
    std::vector<std::string> failures;
    std::mutex failures_mutex;
    const int workers = std::max(1, jobs);
    std::vector<std::thread> pool;
    std::size_t next_index = 0;
    std::mutex next_mutex;
    auto worker = [&]() {
        while (true)
        {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next_index >= cfg.methods.size())
                {
                    return;
                }
                mine = next_index++;
            }
            try
            {
                results[mine] = run_method(cfg.methods[mine], problem, cfg);
            }
            catch (const std::exception& e)
            {
                std::lock_guard<std::mutex> lock(failures_mutex);
                failures.push_back(method_name(cfg.methods[mine]) + std::string(": ") +
                                   e.what());
            }
        }
    };
    if (workers == 1)
    {
        worker();
    }
    else
    {
        for (int w = 0; w < workers; ++w)
        {
            pool.emplace_back(worker);
        }
        for (auto& t : pool)
        {
            t.join();
        }
    }
    if (!failures.empty())
    {
        for (const auto& f : failures)
        {
            std::cerr << "error: " << f << "\n";
        }
        throw numerical_error("one or more methods failed");
    }

    std::ofstream timings(path_in("timings.txt"));
    const std::string stem =
        cfg.phantom_path.empty() ? fs::path(cfg.field_path).stem().string()
                                 : fs::path(cfg.phantom_path).stem().string();
    for (const auto& r : results)
    {
        const std::string name = method_name(r.method);
        write_field(path_in(name + "_field.bin"), r.v_hat);
        write_image(path_in(name + "_image.bin"), r.image);
        write_pgm16(path_in(name + "_image.pgm"), r.image);
        write_diagnostics_csv(path_in(name + "_diagnostics.csv"), r.diagnostics);
        timings << name << " " << format_double_short(r.runtime_s) << "\n";
        if (have_truth)
        {
            const MetricReport m = evaluate_metrics(r.image, truth_image);
            append_metric_row(path_in("comparison.csv"), stem, name, m.snr_db,
                              m.hfen, m.ssim, r.runtime_s);
            std::cout << name << ": snr=" << format_double_short(m.snr_db)
                      << "dB hfen=" << format_double_short(m.hfen)
                      << " ssim=" << format_double_short(m.ssim) << "\n";
        }
    }

    write_manifest(path_in("manifest.txt"),
                   {"command = restore", "config = " + config_path,
                    hash_line(raw.raw()), "seed = " + std::to_string(cfg.seed)});
    return kExitOk;
}

int cmd_evaluate(const std::string& restored, const std::string& reference,
                 const std::string& out, std::string image_name,
                 std::string method, double runtime_s)
{
    const SpatialImage u = read_image(restored);
    const SpatialImage ref = read_image(reference);
    const MetricReport m = evaluate_metrics(u, ref);
    if (image_name.empty())
    {
        image_name = fs::path(reference).stem().string();
    }
    if (method.empty())
    {
        method = fs::path(restored).stem().string();
    }
    append_metric_row(out, image_name, method, m.snr_db, m.hfen, m.ssim,
                      runtime_s);
    std::cout << image_name << "," << method << ",snr=" << format_double_short(m.snr_db)
              << ",hfen=" << format_double_short(m.hfen)
              << ",ssim=" << format_double_short(m.ssim) << "\n";
    return kExitOk;
}

int cmd_spectrum(const std::string& field_path, const std::string& qfield_path,
                 const std::string& support_arg, const std::string& kind,
                 const std::string& out)
{
    const SampleField v = read_field(field_path);
    int k1 = 0, k2 = 0;
    const auto x = support_arg.find('x');
    if (x == std::string::npos)
    {
        k1 = k2 = std::stoi(support_arg);
    }
    else
    {
        k1 = std::stoi(support_arg.substr(0, x));
        k2 = std::stoi(support_arg.substr(x + 1));
    }
    const CenteredGrid support = make_centered_grid(k1, k2);
    const GradSymbols symbols = continuous_symbols(v.grid());

    SampleField first_field, second_field;
    std::string first_name, second_name;
    if (kind == "gslr")
    {
        first_field = apply_grad(symbols, v);
        second_field = apply_symgrad(symbols, apply_grad(symbols, v));
        first_name = "H(D1 v)";
        second_name = "H(D2 v)";
    }
    else
    {
        SampleField q(1, v.grid());
        if (!qfield_path.empty())
        {
            q = read_field(qfield_path);
        }
        first_field = apply_grad(symbols, v) - q;
        second_field = apply_symgrad(symbols, q);
        first_name = "H(Dv-q)";
        second_name = "H(Eq)";
    }
    const SvdResult s1 = svd(lift(first_field, support));
    const SvdResult s2 = svd(lift(second_field, support));

    std::ofstream os(out);
    if (!os)
    {
        throw io_error("cannot open for writing: " + out);
    }
    os << "matrix,index,sigma\n";
    for (Eigen::Index i = 0; i < s1.values.size(); ++i)
    {
        os << first_name << "," << i + 1 << "," << format_double(s1.values(i))
           << "\n";
    }
    for (Eigen::Index i = 0; i < s2.values.size(); ++i)
    {
        os << second_name << "," << i + 1 << "," << format_double(s2.values(i))
           << "\n";
    }
    std::cout << "rank(" << first_name
              << ") = " << numerical_rank(s1.values) << ", rank(" << second_name
              << ") = " << numerical_rank(s2.values) << " at tol "
              << constants::kRankTol << "\n";
    return kExitOk;
}

/// Runs the two one dimensional worked examples: a continuous tent over
/// [-1/4, 1/4) on a pedestal, and the odd ramp x on [-1/4, 1/4). Prints
/// annihilation residuals of both derived sequences and the numerical
/// ranks of their Hankel matrices.
int cmd_demo1d(int n, int support_len)
{
    struct Case {
        std::string name;
        PiecewiseLinear1D model;
    };
    const std::vector<Case> cases = {
        {"tent on pedestal",
         PiecewiseLinear1D{{-0.25, 0.0, 0.25}, {1.0, -1.0}, {1.25, 1.25}}},
        {"odd ramp", PiecewiseLinear1D{{-0.25, 0.25}, {1.0}, {0.0}}},
    };
    for (const auto& c : cases)
    {
        const AnnihilatingFilter filter = minimal_filter_1d(c.model.breakpoints);
        const JumpSamples1D samples = residual_and_pprime_samples_1d(c.model, n);
        const SampleField residual = sequence_as_field(samples.residual);
        const SampleField pprime = sequence_as_field(samples.pprime);
        const double r1 = verify_annihilation(residual, filter);
        const double r2 = verify_annihilation(pprime, filter);
        const CenteredGrid window = make_centered_grid(support_len, 1);
        const int rank1 = numerical_rank(svd(lift(residual, window)).values);
        const int rank2 = numerical_rank(svd(lift(pprime, window)).values);
        std::cout << c.name << " (K=" << c.model.breakpoint_count() << ", N=" << n
                  << ", M=" << support_len << "):\n"
                  << "  residual annihilation max = " << format_double_short(r1)
                  << ", rank = " << rank1 << "\n"
                  << "  p' annihilation max       = " << format_double_short(r2)
                  << ", rank = " << rank2 << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"structured low rank restoration of piecewise smooth images "
                 "from partial Fourier samples"};
    app.set_version_flag("--version", slrf::kVersion);
    app.require_subcommand(1);

    // phantom
    auto* phantom = app.add_subcommand(
        "phantom", "render exact Fourier samples of a rectangle phantom");
    std::string ph_spec, ph_out, ph_image, ph_pgm;
    int ph_n1 = 64, ph_n2 = 0;
    phantom->add_option("--spec", ph_spec, "phantom description file")->required();
    phantom->add_option("--n1", ph_n1, "grid extent (axis 1)")->required();
    phantom->add_option("--n2", ph_n2, "grid extent (axis 2), default n1");
    phantom->add_option("--out", ph_out, "output field (.bin)")->required();
    phantom->add_option("--image", ph_image, "also write the inverse DFT image");
    phantom->add_option("--pgm", ph_pgm, "also write a 16-bit PGM preview");

    // mask
    auto* mask = app.add_subcommand("mask", "build a variable density sampling mask");
    int mk_n1 = 64, mk_n2 = 0, mk_radius = constants::kMaskCenterRadius;
    double mk_fraction = 0.3, mk_decay = constants::kMaskDecayPower;
    std::uint64_t mk_seed = 0;
    std::string mk_out;
    mask->add_option("--n1", mk_n1)->required();
    mask->add_option("--n2", mk_n2, "default n1");
    mask->add_option("--fraction", mk_fraction, "kept fraction in (0,1]");
    mask->add_option("--seed", mk_seed);
    mask->add_option("--decay", mk_decay, "radial density decay power");
    mask->add_option("--center-radius", mk_radius, "fully sampled center disk");
    mask->add_option("--out", mk_out)->required();

    // degrade
    auto* degrade_cmd = app.add_subcommand(
        "degrade", "restrict a field to a mask and add complex Gaussian noise");
    std::string dg_field, dg_mask, dg_out;
    double dg_sigma = 0.0;
    std::uint64_t dg_seed = 0;
    degrade_cmd->add_option("--field", dg_field)->required();
    degrade_cmd->add_option("--mask", dg_mask)->required();
    degrade_cmd->add_option("--sigma", dg_sigma, "noise std per component");
    degrade_cmd->add_option("--seed", dg_seed);
    degrade_cmd->add_option("--out", dg_out)->required();

    // restore
    auto* restore = app.add_subcommand("restore", "run restoration methods from a config");
    std::string rs_config;
    int rs_jobs = 1;
    restore->add_option("--config", rs_config)->required();
    restore->add_option("--jobs", rs_jobs, "parallel independent method runs");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "compute SNR / HFEN / SSIM");
    std::string ev_restored, ev_reference, ev_out = "metrics.csv", ev_image, ev_method;
    double ev_runtime = 0.0;
    evaluate->add_option("--restored", ev_restored)->required();
    evaluate->add_option("--reference", ev_reference)->required();
    evaluate->add_option("--out", ev_out, "CSV to append to");
    evaluate->add_option("--image", ev_image, "image column value");
    evaluate->add_option("--method", ev_method, "method column value");
    evaluate->add_option("--runtime", ev_runtime, "runtime_s column value");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "dump Hankel singular values");
    std::string sp_field, sp_qfield, sp_support = "3x3", sp_kind = "slrm", sp_out;
    spectrum->add_option("--field", sp_field)->required();
    spectrum->add_option("--qfield", sp_qfield, "order 1 auxiliary field");
    spectrum->add_option("--support", sp_support, "patch extents, e.g. 5x5");
    spectrum->add_option("--kind", sp_kind)->check(CLI::IsMember({"slrm", "gslr"}));
    spectrum->add_option("--out", sp_out)->required();

    // demo1d
    auto* demo = app.add_subcommand("demo1d", "annihilation and rank demo on 1D examples");
    int dm_n = 64, dm_support = 8;
    demo->add_option("--n", dm_n, "number of Fourier samples");
    demo->add_option("--support", dm_support, "Hankel window length");

    try
    {
        app.parse(argc, argv);
        if (ph_n2 == 0) ph_n2 = ph_n1;
        if (mk_n2 == 0) mk_n2 = mk_n1;
        if (phantom->parsed())
            return cmd_phantom(ph_spec, ph_n1, ph_n2, ph_out, ph_image, ph_pgm);
        if (mask->parsed())
            return cmd_mask(mk_n1, mk_n2, mk_fraction, mk_seed, mk_decay,
                            mk_radius, mk_out);
        if (degrade_cmd->parsed())
            return cmd_degrade(dg_field, dg_mask, dg_sigma, dg_seed, dg_out);
        if (restore->parsed())
            return cmd_restore(rs_config, rs_jobs);
        if (evaluate->parsed())
            return cmd_evaluate(ev_restored, ev_reference, ev_out, ev_image,
                                ev_method, ev_runtime);
        if (spectrum->parsed())
            return cmd_spectrum(sp_field, sp_qfield, sp_support, sp_kind, sp_out);
        if (demo->parsed())
            return cmd_demo1d(dm_n, dm_support);
        return kExitOk;
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }
    catch (const config_error& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const numerical_error& e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    catch (const io_error& e)
    {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
