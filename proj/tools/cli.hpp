#ifndef PROJCONN_TOOLS_CLI_HPP_
#define PROJCONN_TOOLS_CLI_HPP_

#include "projconn/json_io.hpp"
#include "projconn/projconn.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace projconn::cli
{

struct Options
{
    bool color = false;
};

/// A resolved connection together with the names usable in --set.
struct Source
{
    Connection connection;
    SymbolTable table;
    std::string text; // canonical spec text, hashed into the input digest
};

class UsageError : public Error
{
public:
    using Error::Error;
};

inline std::string sha256_hex(std::string const& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int k = 0; k < len; ++k)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
    return os.str();
}

inline SymbolTable table_for(Connection const& c)
{
    SymbolTable t;
    for (auto const& name : c.coord_names())
        t.add_coordinate(name);
    std::set<std::string> seen;
    std::size_t const n = c.dim();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                for (auto const& s : c.gamma(k, i, j).symbols())
                {
                    if (s.kind() == SymbolKind::coordinate || !seen.insert(s.name()).second)
                        continue;
                    if (s.kind() == SymbolKind::parameter)
                        t.add_parameter(s.name());
                    else
                        t.add_function(s.name(), s.depends_on());
                }
    return t;
}

/// Parses "N=expr,M=expr" into substitution bindings against `table`.
inline std::map<Symbol, DiffPoly> parse_bindings(std::string const& text, SymbolTable const& table,
                                                 std::string const& flag)
{
    std::map<Symbol, DiffPoly> out;
    if (detail::trim(text).empty())
        return out;
    for (auto const& item : detail::split_list(text))
    {
        auto const eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError(flag + ": expected NAME=VALUE, got '" + item + "'");
        std::string const name = detail::trim(item.substr(0, eq));
        auto const sym = table.lookup(name);
        if (!sym || sym->kind() == SymbolKind::coordinate)
            throw UsageError(flag + ": '" + name + "' is not a parameter or function of this connection");
        try
        {
            out[*sym] = parse_expr(item.substr(eq + 1), table);
        }
        catch (ParseError const& e)
        {
            throw UsageError(flag + ": value of " + name + ", offset " + std::to_string(e.offset()) + ": " +
                             e.message());
        }
    }
    return out;
}

/// Exact constant such as "3/2", "-1+2*i".
inline GaussianRational parse_constant(std::string const& text, std::string const& flag)
{
    DiffPoly p;
    try
    {
        p = parse_expr(text, SymbolTable{});
    }
    catch (ParseError const& e)
    {
        throw UsageError(flag + ": '" + text + "', offset " + std::to_string(e.offset()) + ": " + e.message());
    }
    if (!p.is_constant())
        throw UsageError(flag + ": '" + text + "' is not a constant");
    return p.constant_value();
}

inline std::vector<GaussianRational> parse_constants(std::string const& text, std::size_t expected,
                                                     std::string const& flag)
{
    std::vector<GaussianRational> out;
    for (auto const& item : detail::split_list(text))
        out.push_back(parse_constant(item, flag));
    if (expected != 0 && out.size() != expected)
        throw UsageError(flag + ": expected " + std::to_string(expected) + " comma-separated values");
    return out;
}

/// Complex double from an exact constant or a decimal literal like "0.25".
inline cdouble parse_number(std::string const& text, std::string const& flag)
{
    try
    {
        return parse_expr(text, SymbolTable{}).eval({}).to_complex();
    }
    catch (Error const&)
    {}
    try
    {
        std::size_t used = 0;
        double const v = std::stod(text, &used);
        if (detail::trim(text.substr(used)).empty())
            return v;
    }
    catch (std::exception const&)
    {}
    throw UsageError(flag + ": cannot read number '" + text + "'");
}

inline Connection family_connection(std::string const& name, std::size_t n, bool with_trace)
{
    if (name == "torus3")
        return torus3();
    if (name == "torus_n")
        return torus_n(n);
    if (name == "kuga-shimura")
        return kuga_shimura(with_trace);
    throw UsageError("unknown family '" + name + "' (expected torus3, torus_n or kuga-shimura)");
}

inline Source load_source(std::string const& file, std::string const& family, std::size_t n, bool with_trace,
                          std::string const& set)
{
    Source s;
    if (!file.empty() && !family.empty())
        throw UsageError("give either a spec file or --family, not both");
    if (!file.empty())
    {
        auto const spec = load_spec(file);
        s.connection = spec.to_connection();
        s.table = spec.symbol_table();
    }
    else if (!family.empty())
    {
        s.connection = family_connection(family, n, with_trace);
        s.table = table_for(s.connection);
    }
    else
        throw UsageError("no connection given (spec file or --family)");
    if (!set.empty())
        s.connection = s.connection.subst(parse_bindings(set, s.table, "--set"));
    s.text = format_spec(s.connection);
    return s;
}

inline json connection_json(Connection const& c)
{
    json gamma = json::object();
    std::size_t const n = c.dim();
    auto const names = c.coord_names();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                if (!c.gamma(k, i, j).is_zero())
                    gamma[names[k] + "." + names[i] + "." + names[j]] = c.gamma(k, i, j).str();
    return {{"dim", n}, {"coords", names}, {"gamma", gamma}};
}

inline json complex_json(cdouble z)
{
    return json::array({z.real(), z.imag()});
}

class Runner
{
public:
    Runner(std::ostream& out, Options opt) : m_out(out), m_opt(opt) {}

    int run(std::vector<std::string> const& args, std::ostream& err)
    {
        CLI::App app{"Exact curvature and projective-structure calculator for affine connections", "projconn"};
        app.require_subcommand(1);
        app.fallthrough();
        app.set_help_all_flag("--help-all", "Show help for every subcommand");

        std::string format = "text";
        bool strict = false, timing = false;
        app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
        app.add_flag("--strict", strict, "Exit 1 when the computed answer is negative");
        app.add_flag("--timing", timing, "Include wall-clock timing in the report");

        std::string file, family, set;
        std::size_t n = 4;
        bool with_trace = false;
        auto const source_options = [&](CLI::App* sub) {
            sub->add_option("spec", file, "Connection spec file");
            sub->add_option("--family", family, "Built-in family: torus3, torus_n, kuga-shimura");
            sub->add_option("--n", n, "Dimension for torus_n")->check(CLI::PositiveNumber);
            sub->add_flag("--with-trace", with_trace, "Kuga-Shimura family with the C(tau) trace term");
            sub->add_option("--set", set, "Substitutions NAME=VALUE,...");
        };

        auto* curvature_cmd = app.add_subcommand("curvature", "Curvature tensor R^l_{ijk}");
        auto* ricci_cmd = app.add_subcommand("ricci", "Ricci tensor and TrR");
        auto* weyl_cmd = app.add_subcommand("weyl", "Projective Weyl tensor (dimension 3)");
        auto* flat_cmd = app.add_subcommand("flat", "Decide projective flatness (dimension 3)");
        auto* normalize_cmd = app.add_subcommand("normalize", "Volume-normalized representative");
        auto* conditions_cmd = app.add_subcommand("conditions", "Projective flatness conditions");
        for (auto* sub : {curvature_cmd, ricci_cmd, weyl_cmd, flat_cmd, normalize_cmd, conditions_cmd})
            source_options(sub);
        std::vector<std::string> sweeps;
        conditions_cmd->add_option("--sweep", sweeps, "Assignment NAME=VALUE,... to evaluate (repeatable)");

        std::string file_b;
        auto* equiv_cmd = app.add_subcommand("equiv", "Decide projective equivalence of two connections");
        equiv_cmd->add_option("first", file, "First spec file")->required();
        equiv_cmd->add_option("second", file_b, "Second spec file")->required();
        equiv_cmd->add_option("--set", set, "Substitutions applied to both");

        std::string family_name;
        auto* family_cmd = app.add_subcommand("family", "Print a built-in family as a spec file");
        family_cmd->add_option("name", family_name, "torus3, torus_n or kuga-shimura")->required();
        family_cmd->add_option("--n", n, "Dimension for torus_n")->check(CLI::PositiveNumber);
        family_cmd->add_flag("--with-trace", with_trace, "Kuga-Shimura family with the C(tau) trace term");
        family_cmd->add_option("--set", set, "Substitutions NAME=VALUE,...");

        std::string gamma_text = "1,0,0,1", lambda_text = "0,0,0,0", point_text, values_text, image_text;
        auto* pullback_cmd = app.add_subcommand("pullback-check",
                                                "Check invariance of the Kuga-Shimura field under (gamma, lambda)");
        pullback_cmd->add_option("--gamma", gamma_text, "a,b,c,d with ad - bc = 1");
        pullback_cmd->add_option("--lambda", lambda_text, "m,n,k,l");
        pullback_cmd->add_option("--point", point_text, "tau,z1,z2")->required();
        pullback_cmd->add_option("--values", values_text, "Coefficient values at tau, e.g. A=1,B=2")->required();
        pullback_cmd->add_option("--image-values", image_text,
                                 "Coefficient values at gamma(tau); default: the weight rule");
        pullback_cmd->add_flag("--with-trace", with_trace, "Include the C(tau) trace term");

        std::string x0_text, v0_text, against;
        double step = 1e-3;
        std::size_t count = 300;
        auto* geodesic_cmd = app.add_subcommand("geodesic", "Integrate a geodesic (constant coefficients)");
        source_options(geodesic_cmd);
        geodesic_cmd->add_option("--x0", x0_text, "Initial point, comma-separated")->required();
        geodesic_cmd->add_option("--v0", v0_text, "Initial velocity, comma-separated")->required();
        geodesic_cmd->add_option("--step", step, "Step size");
        geodesic_cmd->add_option("--count", count, "Number of steps");
        geodesic_cmd->add_option("--against", against, "Second spec file; report the trace deviation");

        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try
        {
            app.parse(reversed);
        }
        catch (CLI::CallForHelp const& e)
        {
            return app.exit(e, m_out, err);
        }
        catch (CLI::CallForAllHelp const& e)
        {
            return app.exit(e, m_out, err);
        }
        catch (CLI::ParseError const& e)
        {
            app.exit(e, err, err);
            return 2;
        }

        m_json = format == "json";
        m_strict = strict;
        m_report = json::object();
        m_report["schema"] = 1;
        m_report["command"] = args;
        m_digest_input.clear();
        for (auto const& a : args)
            m_digest_input += a + '\0';

        auto const start = std::chrono::steady_clock::now();
        int code = 0;
        try
        {
            if (equiv_cmd->parsed())
                code = equiv(file, file_b, set);
            else if (family_cmd->parsed())
                code = family_print(family_name, n, with_trace, set);
            else if (pullback_cmd->parsed())
                code = pullback(gamma_text, lambda_text, point_text, values_text, image_text, with_trace);
            else
            {
                Source const s = load_source(file, family, n, with_trace, set);
                m_digest_input += s.text;
                if (curvature_cmd->parsed())
                    code = tensor_report("curvature", "R^l_{ijk}, key l.i.j.k", curvature(s.connection), s);
                else if (ricci_cmd->parsed())
                    code = ricci_report(s);
                else if (weyl_cmd->parsed())
                    code = tensor_report("weyl", "W^l_{ijk}, key l.i.j.k", weyl3(s.connection), s);
                else if (flat_cmd->parsed())
                    code = flat(s);
                else if (normalize_cmd->parsed())
                    code = normalize(s);
                else if (conditions_cmd->parsed())
                    code = conditions(s, sweeps);
                else if (geodesic_cmd->parsed())
                    code = geodesic(s, x0_text, v0_text, step, count, against, set);
            }
        }
        catch (Error const& e)
        {
            err << "error: " << e.what() << "\n";
            return 2;
        }
        catch (std::logic_error const& e)
        {
            err << "internal error: " << e.what() << "\n";
            return 2;
        }

        m_report["input_sha256"] = sha256_hex(m_digest_input);
        if (timing)
        {
            auto const ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            m_report["elapsed_ms"] = ms;
            m_text << "elapsed: " << ms << " ms\n";
        }
        if (m_json)
            m_out << m_report.dump(2) << "\n";
        else
        {
            m_out << m_text.str();
            if (!m_raw_text)
                m_out << "input sha256: " << m_report["input_sha256"].get<std::string>() << "\n";
        }
        return code;
    }

private:
    std::string paint(bool value) const
    {
        std::string const word = value ? "true" : "false";
        if (!m_opt.color)
            return word;
        return (value ? "\033[32m" : "\033[31m") + word + "\033[0m";
    }

    int verdict(bool value) const { return (!value && m_strict) ? 1 : 0; }

    void write_tensor_text(Tensor const& t, std::vector<std::string> const& names)
    {
        bool any = false;
        for (std::size_t f = 0; f < t.entries().size(); ++f)
            if (!t.entry(f).is_zero())
            {
                m_text << "  " << index_key(t.index_of(f), names) << " = " << t.entry(f) << "\n";
                any = true;
            }
        if (!any)
            m_text << "  all components zero\n";
    }

    int tensor_report(std::string const& what, std::string const& legend, Tensor const& t, Source const& s)
    {
        auto const names = s.connection.coord_names();
        m_report["result"] = {{what, tensor_to_json(t, names)}, {"zero", t.is_zero()}};
        m_text << what << " " << legend << "\n";
        write_tensor_text(t, names);
        return 0;
    }

    int ricci_report(Source const& s)
    {
        Tensor const r = curvature(s.connection);
        Tensor const ric = ricci_from_curvature(r);
        Tensor const tr = trace_r_from_curvature(r);
        auto const names = s.connection.coord_names();
        m_report["result"] = {{"ricci", tensor_to_json(ric, names)},
                              {"trace_r", tensor_to_json(tr, names)},
                              {"equiaffine", tr.is_zero()}};
        m_text << "ricci Ric_{ij}, key i.j\n";
        write_tensor_text(ric, names);
        m_text << "TrR_{ij}, key i.j\n";
        write_tensor_text(tr, names);
        m_text << "equiaffine: " << paint(tr.is_zero()) << "\n";
        return 0;
    }

    int flat(Source const& s)
    {
        bool const result = is_projectively_flat3(s.connection);
        m_report["result"] = {{"projectively_flat", result}};
        m_text << "projectively flat: " << paint(result) << "\n";
        return verdict(result);
    }

    int equiv(std::string const& a, std::string const& b, std::string const& set)
    {
        Source const sa = load_source(a, "", 0, false, set);
        Source const sb = load_source(b, "", 0, false, set);
        m_digest_input += sa.text + '\0' + sb.text;
        auto const theta = projective_equiv(sa.connection, sb.connection);
        auto const names = sa.connection.coord_names();
        m_report["result"] = {{"equivalent", theta.has_value()},
                              {"witness", theta ? one_form_to_json(*theta, names) : json(nullptr)}};
        m_text << "projectively equivalent: " << paint(theta.has_value()) << "\n";
        if (theta)
        {
            m_text << "witness one-form (first = second + J(theta)):\n";
            for (std::size_t k = 0; k < names.size(); ++k)
                m_text << "  theta_" << names[k] << " = " << theta->components[k] << "\n";
        }
        return verdict(theta.has_value());
    }

    int normalize(Source const& s)
    {
        Connection const c = volume_normalize(s.connection);
        std::size_t const n = c.dim();
        OneForm witness = divergence(ThetaField::of(s.connection));
        for (auto& w : witness.components)
            w = w / GaussianRational(static_cast<long>(n + 1));
        auto const names = c.coord_names();
        m_report["result"] = {{"witness", one_form_to_json(witness, names)}, {"connection", connection_json(c)}};
        m_text << "witness one-form (input = normalized + J(theta)):\n";
        for (std::size_t k = 0; k < n; ++k)
            m_text << "  theta_" << names[k] << " = " << witness.components[k] << "\n";
        m_text << "normalized connection:\n" << format_spec(c);
        return 0;
    }

    int conditions(Source const& s, std::vector<std::string> const& sweeps)
    {
        auto const conds = flatness_conditions(s.connection);
        m_report["result"] = {{"conditions", polys_to_json(conds)}};
        m_text << "projective flatness conditions (" << conds.size() << "):\n";
        for (auto const& p : conds)
            m_text << "  " << p << " = 0\n";
        if (sweeps.empty())
            return 0;

        // Each sweep point is independent; results are merged in input order.
        std::vector<std::map<Symbol, DiffPoly>> bindings;
        for (auto const& sw : sweeps)
            bindings.push_back(parse_bindings(sw, s.table, "--sweep"));
        std::vector<std::future<std::vector<DiffPoly>>> jobs;
        for (auto const& b : bindings)
            jobs.push_back(std::async(std::launch::async, [&conds, b] {
                std::vector<DiffPoly> out;
                for (auto const& p : conds)
                    out.push_back(p.subst(b));
                return out;
            }));
        json sweep = json::array();
        bool all_flat = true;
        m_text << "sweep:\n";
        for (std::size_t k = 0; k < jobs.size(); ++k)
        {
            auto const values = jobs[k].get();
            bool const vanish = std::all_of(values.begin(), values.end(), [](DiffPoly const& p) { return p.is_zero(); });
            all_flat = all_flat && vanish;
            sweep.push_back({{"assignment", sweeps[k]}, {"values", polys_to_json(values)}, {"all_vanish", vanish}});
            m_text << "  [" << sweeps[k] << "] all vanish: " << paint(vanish) << "\n";
        }
        m_report["result"]["sweep"] = sweep;
        return verdict(all_flat);
    }

    int family_print(std::string const& name, std::size_t n, bool with_trace, std::string const& set)
    {
        Source const s = load_source("", name, n, with_trace, set);
        m_digest_input += s.text;
        std::string const tag = name == "kuga-shimura" ? (with_trace ? "kuga-shimura-trace" : "kuga-shimura") : name;
        std::string const text = format_spec(s.connection, "", tag);
        m_report["result"] = {{"spec", text}, {"connection", connection_json(s.connection)}};
        m_text << text;
        m_raw_text = true;
        return 0;
    }

    int pullback(std::string const& gamma_text, std::string const& lambda_text, std::string const& point_text,
                 std::string const& values_text, std::string const& image_text, bool with_trace)
    {
        auto const g4 = parse_constants(gamma_text, 4, "--gamma");
        auto const l4 = parse_constants(lambda_text, 4, "--lambda");
        auto const p3 = parse_constants(point_text, 3, "--point");
        GroupElement const g(g4[0], g4[1], g4[2], g4[3], l4[0], l4[1], l4[2], l4[3]);
        Point3 const point{p3[0], p3[1], p3[2]};
        auto const weights = kuga_shimura_weights(with_trace);

        auto const read_values = [&](std::string const& text, std::string const& flag) {
            std::map<Symbol, GaussianRational> out;
            for (auto const& item : detail::split_list(text))
            {
                auto const eq = item.find('=');
                if (eq == std::string::npos)
                    throw UsageError(flag + ": expected NAME=VALUE, got '" + item + "'");
                std::string const name = detail::trim(item.substr(0, eq));
                auto const it = std::find_if(weights.begin(), weights.end(),
                                             [&](WeightedCoefficient const& w) { return w.symbol.name() == name; });
                if (it == weights.end())
                    throw UsageError(flag + ": '" + name + "' is not a coefficient of this family");
                out[it->symbol] = parse_constant(item.substr(eq + 1), flag);
            }
            return out;
        };
        auto const at_source = read_values(values_text, "--values");
        CoefficientSample sample = make_sample(point, g, weights, at_source);
        if (!image_text.empty())
            sample.at_image = read_values(image_text, "--image-values");

        ThetaField const field = ThetaField::of(kuga_shimura(with_trace));
        bool const ok = invariance_check(field, g, {sample}, weights);
        Point3 const image = action_map(g)(point);
        json img = json::array();
        for (auto const& z : image)
            img.push_back(z.str());
        m_report["result"] = {{"invariant", ok}, {"image_point", img}};
        m_text << "image point: (" << image[0] << ", " << image[1] << ", " << image[2] << ")\n";
        m_text << "invariant: " << paint(ok) << "\n";
        return verdict(ok);
    }

    int geodesic(Source const& s, std::string const& x0_text, std::string const& v0_text, double step,
                 std::size_t count, std::string const& against, std::string const& set)
    {
        auto const numeric = [](Connection const& c) {
            try
            {
                return NumericConnection::from(c);
            }
            catch (EvaluationError const&)
            {
                throw UsageError("geodesic integration needs constant coefficients; bind every symbol with --set");
            }
        };
        CVector x0, v0;
        for (auto const& item : detail::split_list(x0_text))
            x0.push_back(parse_number(item, "--x0"));
        for (auto const& item : detail::split_list(v0_text))
            v0.push_back(parse_number(item, "--v0"));
        GeodesicPath const path = integrate(numeric(s.connection), x0, v0, step, count);
        auto const names = s.connection.coord_names();

        if (!against.empty())
        {
            Source const other = load_source(against, "", 0, false, set);
            m_digest_input += other.text;
            if (other.connection.dim() != s.connection.dim())
                throw DimensionError("--against connection has a different dimension");
            GeodesicPath const q = integrate(numeric(other.connection), x0, v0, step, count);
            double const d = trace_deviation(path, q);
            m_report["result"] = {{"trace_deviation", d}, {"horizon", step * static_cast<double>(count)}};
            m_text << "trace deviation: " << detail::shortest(d) << "\n";
            return 0;
        }

        if (m_json)
        {
            json samples = json::array();
            for (auto const& smp : path.samples)
            {
                json pos = json::array(), vel = json::array();
                for (auto const& z : smp.position)
                    pos.push_back(complex_json(z));
                for (auto const& z : smp.velocity)
                    vel.push_back(complex_json(z));
                samples.push_back({{"t", smp.t}, {"position", pos}, {"velocity", vel}});
            }
            m_report["result"] = {{"coords", names}, {"samples", samples}};
        }
        write_csv(m_text, path, names);
        m_raw_text = true;
        return 0;
    }

    std::ostream& m_out;
    Options m_opt;
    bool m_json = false;
    bool m_strict = false;
    bool m_raw_text = false;
    json m_report;
    std::ostringstream m_text;
    std::string m_digest_input;
};

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 negative answer under --strict, 2 input error.
inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, Options opt = {})
{
    Runner r(out, opt);
    return r.run(args, err);
}

} // namespace projconn::cli
#endif // PROJCONN_TOOLS_CLI_HPP_
