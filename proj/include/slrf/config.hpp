#ifndef SLRF_CONFIG_HPP
#define SLRF_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slrf/arrayio.hpp"
#include "slrf/baselines.hpp"
#include "slrf/bregman.hpp"
#include "slrf/constants.hpp"
#include "slrf/grid.hpp"
#include "slrf/irls.hpp"
#include "slrf/pipeline.hpp"

namespace slrf {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

///
/// Flat `key = value` configuration with `[section]` headers, no nesting.
/// Errors carry line numbers. Raw bytes are kept so manifests can record
/// a config hash.
///
class KeyValueConfig {
public:
    static KeyValueConfig parse_file(const std::string& path)
    {
        std::ifstream is(path);
        if (!is)
        {
            throw config_error("cannot open config file: " + path);
        }
        std::ostringstream raw;
        raw << is.rdbuf();
        KeyValueConfig cfg = parse_text(raw.str(), path);
        return cfg;
    }

    static KeyValueConfig parse_text(const std::string& text,
                                     const std::string& name = "<config>")
    {
        KeyValueConfig cfg;
        cfg.name_ = name;
        cfg.raw_ = text;
        std::istringstream is(text);
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#')
            {
                continue;
            }
            const auto last = line.find_last_not_of(" \t\r");
            const std::string body = line.substr(first, last - first + 1);
            if (body.front() == '[')
            {
                if (body.back() != ']')
                {
                    throw config_error(name + ":" + std::to_string(line_no) +
                                       ": unterminated section header");
                }
                section = body.substr(1, body.size() - 2);
                continue;
            }
            const auto eq = body.find('=');
            if (eq == std::string::npos)
            {
                throw config_error(name + ":" + std::to_string(line_no) +
                                   ": expected key = value");
            }
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t");
                const auto b = s.find_last_not_of(" \t");
                return a == std::string::npos ? std::string()
                                              : s.substr(a, b - a + 1);
            };
            const std::string key = trim(body.substr(0, eq));
            const std::string value = trim(body.substr(eq + 1));
            if (key.empty())
            {
                throw config_error(name + ":" + std::to_string(line_no) +
                                   ": empty key");
            }
            cfg.entries_[section + "/" + key] = {value, line_no};
        }
        return cfg;
    }

    bool has(const std::string& section, const std::string& key) const
    {
        return entries_.count(section + "/" + key) > 0;
    }

    std::string get_string(const std::string& section, const std::string& key) const
    {
        const auto it = entries_.find(section + "/" + key);
        if (it == entries_.end())
        {
            throw config_error(name_ + ": missing required key [" + section + "] " +
                               key);
        }
        return it->second.value;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const
    {
        return has(section, key) ? get_string(section, key) : fallback;
    }

    double get_double(const std::string& section, const std::string& key) const
    {
        return parse_number<double>(section, key, get_string(section, key));
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const
    {
        return has(section, key) ? get_double(section, key) : fallback;
    }

    std::int64_t get_int(const std::string& section, const std::string& key) const
    {
        return parse_number<std::int64_t>(section, key, get_string(section, key));
    }

    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const
    {
        return has(section, key) ? get_int(section, key) : fallback;
    }

    std::vector<std::string> get_list(const std::string& section,
                                      const std::string& key) const
    {
        std::vector<std::string> out;
        std::istringstream is(get_string(section, key));
        std::string tok;
        while (std::getline(is, tok, ','))
        {
            const auto a = tok.find_first_not_of(" \t");
            const auto b = tok.find_last_not_of(" \t");
            if (a != std::string::npos)
            {
                out.push_back(tok.substr(a, b - a + 1));
            }
        }
        return out;
    }

    const std::string& raw() const { return raw_; }
    std::uint64_t hash() const { return fnv1a64(raw_); }
    const std::string& name() const { return name_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };

    template <typename T>
    T parse_number(const std::string& section, const std::string& key,
                   const std::string& value) const
    {
        std::istringstream is(value);
        T out{};
        if (!(is >> out) || !(is >> std::ws).eof())
        {
            const auto it = entries_.find(section + "/" + key);
            throw config_error(name_ + ":" + std::to_string(it->second.line) +
                               ": cannot parse '" + value + "' for [" + section +
                               "] " + key);
        }
        return out;
    }

    std::string name_;
    std::string raw_;
    std::map<std::string, Entry> entries_;
};

enum class Method { proposed, slrm_irls, gslr_irls, tgv, infconv, framelet, zerofill };

inline Method method_from_name(const std::string& name)
{
    if (name == "proposed") return Method::proposed;
    if (name == "slrm-irls") return Method::slrm_irls;
    if (name == "gslr-irls") return Method::gslr_irls;
    if (name == "tgv") return Method::tgv;
    if (name == "infconv") return Method::infconv;
    if (name == "framelet") return Method::framelet;
    if (name == "zerofill") return Method::zerofill;
    throw config_error("unknown method '" + name + "'");
}

inline std::string method_name(Method m)
{
    switch (m)
    {
    case Method::proposed: return "proposed";
    case Method::slrm_irls: return "slrm-irls";
    case Method::gslr_irls: return "gslr-irls";
    case Method::tgv: return "tgv";
    case Method::infconv: return "infconv";
    case Method::framelet: return "framelet";
    case Method::zerofill: return "zerofill";
    }
    return "?";
}

///
/// ### ExperimentConfig
///
/// Everything a `restore` run needs: where the data comes from (a phantom
/// description or pre-rendered field), grid extents, mask and noise
/// parameters, the method list with per-method solver parameters, and the
/// patch support. Support extents must be odd and fit inside the grid.
///
struct ExperimentConfig {
    std::string phantom_path;   // one of phantom_path / field_path is required
    std::string field_path;
    int n1 = 0, n2 = 0;
    double fraction = 1.0;
    double mask_decay = constants::kMaskDecayPower;
    int mask_center_radius = constants::kMaskCenterRadius;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    int support1 = 0, support2 = 0;
    std::vector<Method> methods;
    std::string outdir;

    TgvParams tgv;
    InfconvParams infconv;
    FrameletParams framelet;
    IrlsParams irls_slrm;
    IrlsParams irls_gslr;
    PipelineParams pipeline;

    static ExperimentConfig from(const KeyValueConfig& cfg)
    {
        ExperimentConfig ec;
        ec.phantom_path = cfg.get_string("problem", "phantom", "");
        ec.field_path = cfg.get_string("problem", "field", "");
        if (ec.phantom_path.empty() && ec.field_path.empty())
        {
            throw config_error(cfg.name() +
                               ": [problem] needs 'phantom' or 'field'");
        }
        ec.n1 = static_cast<int>(cfg.get_int("problem", "n1"));
        ec.n2 = static_cast<int>(cfg.get_int("problem", "n2", ec.n1));
        ec.fraction = cfg.get_double("problem", "fraction", 1.0);
        ec.mask_decay =
            cfg.get_double("problem", "mask_decay", constants::kMaskDecayPower);
        ec.mask_center_radius = static_cast<int>(cfg.get_int(
            "problem", "mask_center_radius", constants::kMaskCenterRadius));
        ec.sigma = cfg.get_double("problem", "sigma", 0.0);
        ec.seed = static_cast<std::uint64_t>(cfg.get_int("problem", "seed", 0));

        const std::string support = cfg.get_string("restore", "support");
        const auto x = support.find('x');
        try
        {
            if (x == std::string::npos)
            {
                ec.support1 = ec.support2 = std::stoi(support);
            }
            else
            {
                ec.support1 = std::stoi(support.substr(0, x));
                ec.support2 = std::stoi(support.substr(x + 1));
            }
        }
        catch (const std::exception&)
        {
            throw config_error(cfg.name() + ": bad [restore] support '" + support +
                               "'");
        }
        if (ec.support1 % 2 == 0 || ec.support2 % 2 == 0 ||
            ec.support1 > ec.n1 || ec.support2 > ec.n2 || ec.support1 < 1)
        {
            throw config_error(cfg.name() +
                               ": support must be odd on both axes and fit the grid");
        }
        for (const auto& name : cfg.get_list("restore", "method"))
        {
            ec.methods.push_back(method_from_name(name));
        }
        if (ec.methods.empty())
        {
            throw config_error(cfg.name() + ": no methods requested");
        }
        ec.outdir = cfg.get_string("restore", "outdir", "out");

        auto fill_tgv = [&](const std::string& sec, TgvParams& p) {
            p.gamma1 = cfg.get_double(sec, "gamma1", p.gamma1);
            p.gamma2 = cfg.get_double(sec, "gamma2", p.gamma2);
            p.beta = cfg.get_double(sec, "beta", p.beta);
            p.max_iters = static_cast<int>(cfg.get_int(sec, "max_iters", p.max_iters));
            p.tol = cfg.get_double(sec, "tol", p.tol);
        };
        fill_tgv("tgv", ec.tgv);

        ec.infconv.gamma1 = cfg.get_double("infconv", "gamma1", ec.infconv.gamma1);
        ec.infconv.gamma2 = cfg.get_double("infconv", "gamma2", ec.infconv.gamma2);
        ec.infconv.beta = cfg.get_double("infconv", "beta", ec.infconv.beta);
        ec.infconv.max_iters = static_cast<int>(
            cfg.get_int("infconv", "max_iters", ec.infconv.max_iters));
        ec.infconv.tol = cfg.get_double("infconv", "tol", ec.infconv.tol);

        ec.framelet.gamma = cfg.get_double("framelet", "gamma", ec.framelet.gamma);
        ec.framelet.beta = cfg.get_double("framelet", "beta", ec.framelet.beta);
        ec.framelet.max_iters = static_cast<int>(
            cfg.get_int("framelet", "max_iters", ec.framelet.max_iters));
        ec.framelet.tol = cfg.get_double("framelet", "tol", ec.framelet.tol);

        auto fill_irls = [&](const std::string& sec, IrlsParams& p) {
            p.gamma1 = cfg.get_double(sec, "gamma1", p.gamma1);
            p.gamma2 = cfg.get_double(sec, "gamma2", p.gamma2);
            p.outer_iters =
                static_cast<int>(cfg.get_int(sec, "outer_iters", p.outer_iters));
            p.tol = cfg.get_double(sec, "tol", p.tol);
            p.eps0_rel = cfg.get_double(sec, "eps0_rel", p.eps0_rel);
            p.eps_min_rel = cfg.get_double(sec, "eps_min_rel", p.eps_min_rel);
            p.eps_factor = cfg.get_double(sec, "eps_factor", p.eps_factor);
            p.cg_max = static_cast<int>(cfg.get_int(sec, "cg_max", p.cg_max));
            p.cg_tol = cfg.get_double(sec, "cg_tol", p.cg_tol);
        };
        fill_irls("slrm-irls", ec.irls_slrm);
        fill_irls("gslr-irls", ec.irls_gslr);

        ec.pipeline.pre = ec.tgv; // pre-restoration defaults to the TGV baseline
        fill_tgv("proposed-pre", ec.pipeline.pre);
        ec.pipeline.nu1 = cfg.get_double("proposed", "nu1", ec.pipeline.nu1);
        ec.pipeline.nu2 = cfg.get_double("proposed", "nu2", ec.pipeline.nu2);
        ec.pipeline.eps_rel =
            cfg.get_double("proposed", "eps_rel", ec.pipeline.eps_rel);
        ec.pipeline.solve.beta =
            cfg.get_double("proposed", "beta", ec.pipeline.solve.beta);
        ec.pipeline.solve.max_iters = static_cast<int>(
            cfg.get_int("proposed", "max_iters", ec.pipeline.solve.max_iters));
        ec.pipeline.solve.tol =
            cfg.get_double("proposed", "tol", ec.pipeline.solve.tol);
        const std::string qsrc =
            cfg.get_string("proposed", "qtilde_source", "tgv-p");
        if (qsrc == "tgv-p")
        {
            ec.pipeline.qtilde = QtildeSource::tgv_p;
        }
        else if (qsrc == "grad-of-vtilde")
        {
            ec.pipeline.qtilde = QtildeSource::grad_of_vtilde;
        }
        else
        {
            throw config_error(cfg.name() + ": bad qtilde_source '" + qsrc + "'");
        }
        return ec;
    }
};

} // namespace slrf

#endif // SLRF_CONFIG_HPP
