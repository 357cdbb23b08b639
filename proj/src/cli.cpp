#include "mesoatom/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mesoatom/constants.hpp"
#include "mesoatom/oracle.hpp"
#include "mesoatom/specialfn.hpp"
#include "mesoatom/wavefunction.hpp"

namespace mesoatom::cli {

namespace {

// 17 significant digits: round-trip exact for 64-bit floats.
std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Minimal JSON writer with fixed key order, so identical configs give
// byte-identical files.
struct JsonWriter {
    std::ostringstream os;
    bool first = true;

    void open() { os << "{"; first = true; }
    void close() { os << "}"; }
    void key(const std::string& k) {
        if (!first) os << ",";
        first = false;
        os << "\"" << k << "\":";
    }
    void field(const std::string& k, double v) { key(k); os << g17(v); }
    void field(const std::string& k, long long v) { key(k); os << v; }
    void field(const std::string& k, bool v) { key(k); os << (v ? "true" : "false"); }
    void field_str(const std::string& k, const std::string& v) { key(k); os << "\"" << v << "\""; }
    void raw(const std::string& k, const std::string& json) { key(k); os << json; }
};

struct Options {
    std::string command;
    // parameters
    std::optional<double> mu, z_alpha;
    std::optional<double> a_cm, m0_g, gm;
    std::optional<int> Z;
    long long two_q = 0;
    bool two_q_set = false;
    std::string preset;
    // output
    std::string format = "json";
    std::string out_path;
    long long max_levels = 1000000;
    // wavefunction
    long long wf_n = 0;
    long long wf_l2 = 0;
    bool wf_l2_set = false;
    long long samples = 2001;
    double chi_min = 1e-3, chi_max = 15.0;
    // harmonics
    long long h_l2 = 0, h_m2 = 0;
    long long ntheta = 32, nphi = 64;
    // verify
    double tol = 1e-10;
    double bracket_pad = 1e-6;
};

struct ResolvedParams {
    DimensionlessParams dp;
    std::optional<PhysicalParams> pp;
};

ResolvedParams resolve_params(const Options& o) {
    if (o.mu.has_value() || o.z_alpha.has_value()) {
        if (!o.mu.has_value() || !o.z_alpha.has_value())
            throw DomainError("dimensionless mode needs both --mu and --z-alpha");
        DimensionlessParams d;
        d.mu = *o.mu;
        d.z_alpha = *o.z_alpha;
        d.two_q = o.two_q;
        d.validate();
        return {d, std::nullopt};
    }
    if (o.a_cm.has_value() || o.m0_g.has_value()) {
        if (!o.a_cm.has_value() || !o.m0_g.has_value() || !o.Z.has_value())
            throw DomainError("physical mode needs --a-cm, --m0-g and --Z");
        PhysicalParams p = PhysicalParams::with_two_q(*o.a_cm, *o.m0_g, *o.Z, o.two_q);
        if (o.gm.has_value()) p.gm = *o.gm;
        DimensionlessParams d = from_physical(p);
        return {d, p};
    }
    throw DomainError("no parameters given: use --mu/--z-alpha, --a-cm/--m0-g/--Z, "
                      "--config or --preset");
}

void write_output(const Options& o, const std::string& text, std::ostream& fallback) {
    if (o.out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + o.out_path);
    f << text;
}

std::string level_json(const Level& lv) {
    JsonWriter w;
    w.open();
    w.field("two_q", lv.qn.two_q);
    w.field("l2", lv.qn.two_l);
    w.field("n", lv.qn.n);
    w.field("kappa", lv.kappa);
    w.field("N", lv.principal);
    w.field("eps", lv.eps);
    w.field("lambda", lv.lambda);
    if (lv.energy_erg) w.field("energy_erg", *lv.energy_erg);
    w.field("degeneracy", lv.degeneracy);
    w.close();
    return w.os.str();
}

std::string spectrum_csv(const Spectrum& sp) {
    std::ostringstream os;
    os << "two_q,l2,n,kappa,N,eps,lambda,energy_erg,degeneracy\n";
    for (const auto& lv : sp.levels) {
        os << lv.qn.two_q << "," << lv.qn.two_l << "," << lv.qn.n << "," << g17(lv.kappa)
           << "," << g17(lv.principal) << "," << g17(lv.eps) << "," << g17(lv.lambda) << ",";
        if (lv.energy_erg) os << g17(*lv.energy_erg);
        os << "," << lv.degeneracy << "\n";
    }
    return os.str();
}

std::string spectrum_json(const Spectrum& sp, const ResolvedParams& rp,
                          const std::string& preset) {
    JsonWriter w;
    w.open();
    {
        JsonWriter pw;
        pw.open();
        pw.field("mu", rp.dp.mu);
        pw.field("z_alpha", rp.dp.z_alpha);
        pw.field("two_q", rp.dp.two_q);
        pw.close();
        w.raw("params", pw.os.str());
    }
    if (!preset.empty()) w.field_str("preset", preset);
    w.field("N0", sp.bounds.n0_cap);
    w.field("q0_cap", sp.bounds.q0_cap);
    w.field("spectrum_empty", sp.levels.empty());
    w.field("truncated", sp.truncated);
    w.field("count", static_cast<long long>(sp.levels.size()));
    {
        std::string arr = "[";
        for (std::size_t i = 0; i < sp.levels.size(); ++i) {
            if (i) arr += ",";
            arr += level_json(sp.levels[i]);
        }
        arr += "]";
        w.raw("levels", arr);
    }
    w.close();
    return w.os.str() + "\n";
}

int cmd_spectrum(const Options& o, std::ostream& out) {
    const ResolvedParams rp = resolve_params(o);
    const Spectrum sp = build_spectrum(rp.dp, rp.pp ? &*rp.pp : nullptr,
                                       static_cast<std::size_t>(o.max_levels));
    write_output(o, o.format == "csv" ? spectrum_csv(sp) : spectrum_json(sp, rp, o.preset),
                 out);
    return exit_ok;
}

int cmd_caps(const Options& o, std::ostream& out) {
    const ResolvedParams rp = resolve_params(o);
    const SpectrumBounds b = spectrum_caps(rp.dp.mu, rp.dp.z_alpha);
    const double aq = 0.5 * std::abs(static_cast<double>(rp.dp.two_q));
    JsonWriter w;
    w.open();
    w.field("N0", b.n0_cap);
    w.field("q0_cap", b.q0_cap);
    w.field("empty", b.empty || aq >= b.q0_cap);
    w.close();
    write_output(o, w.os.str() + "\n", out);
    return exit_ok;
}

int cmd_wavefunction(const Options& o, std::ostream& out) {
    if (o.out_path.empty())
        throw DomainError("wavefunction writes a CSV file plus a JSON sidecar: --out is required");
    const ResolvedParams rp = resolve_params(o);
    const Spectrum sp = build_spectrum(rp.dp, nullptr, static_cast<std::size_t>(o.max_levels));
    const Level* found = nullptr;
    for (const auto& lv : sp.levels)
        if (lv.qn.n == o.wf_n && lv.qn.two_l == o.wf_l2) found = &lv;
    if (!found)
        throw NoSuchLevel("level (n=" + std::to_string(o.wf_n) +
                          ", 2l=" + std::to_string(o.wf_l2) + ") is not in the spectrum");

    const RadialProfile prof = make_profile(*found, rp.dp);
    const auto rows =
        sample_profile(prof, o.chi_min, o.chi_max, static_cast<int>(o.samples));
    std::ostringstream csv;
    csv << "chi,x,Q,dQ_dchi\n";
    for (const auto& r : rows)
        csv << g17(r.chi) << "," << g17(r.x) << "," << g17(r.Q) << "," << g17(r.dQ_dchi)
            << "\n";
    write_output(o, csv.str(), out);

    JsonWriter w;
    w.open();
    w.field("C", prof.norm_const);
    w.field("kappa", found->kappa);
    w.field("lambda", found->lambda);
    w.field("eps", found->eps);
    w.field("sobolev_norm", sobolev_norm(prof));
    w.field("charge", 1.0);
    w.close();
    std::ofstream side(o.out_path + ".json", std::ios::binary);
    if (!side) throw DomainError("cannot open sidecar " + o.out_path + ".json");
    side << w.os.str() << "\n";
    return exit_ok;
}

int cmd_harmonics(const Options& o, std::ostream& out) {
    const ResolvedParams rp = resolve_params(o);
    std::ostringstream csv;
    csv << "chart,theta,phi,re,im\n";
    for (const Chart chart : {Chart::plus, Chart::minus}) {
        const HarmonicSection s(rp.dp.two_q, o.h_l2, o.h_m2, chart);
        for (long long i = 0; i < o.ntheta; ++i) {
            const double theta = (i + 0.5) * std::numbers::pi / static_cast<double>(o.ntheta);
            for (long long j = 0; j < o.nphi; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / static_cast<double>(o.nphi);
                const auto v = harmonic_eval(s, theta, phi);
                csv << (chart == Chart::plus ? "plus" : "minus") << "," << g17(theta) << ","
                    << g17(phi) << "," << g17(v.real()) << "," << g17(v.imag()) << "\n";
            }
        }
    }
    write_output(o, csv.str(), out);
    return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const ResolvedParams rp = resolve_params(o);
    const auto t0 = std::chrono::steady_clock::now();

    ShootingConfig cfg;
    cfg.tol = o.tol;
    cfg.bracket_pad = o.bracket_pad;

    const Spectrum sp = build_spectrum(rp.dp, nullptr, static_cast<std::size_t>(o.max_levels));

    // closed-form eps per (l) channel
    std::vector<std::pair<long long, std::vector<double>>> channels;
    for (const auto& lv : sp.levels) {
        auto it = std::find_if(channels.begin(), channels.end(),
                               [&](const auto& c) { return c.first == lv.qn.two_l; });
        if (it == channels.end()) {
            channels.push_back({lv.qn.two_l, {lv.eps}});
        } else {
            it->second.push_back(lv.eps);
        }
    }
    for (auto& c : channels) std::sort(c.second.begin(), c.second.end());

    long long checked = 0;
    double max_rel = 0.0;
    bool complete = true;
    for (const auto& c : channels) {
        const auto roots = find_eigenvalues(c.first, rp.dp.two_q, rp.dp.z_alpha, rp.dp.mu, cfg);
        if (roots.size() != c.second.size()) {
            complete = false;
            continue;
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            max_rel = std::max(max_rel, std::abs(roots[i] - c.second[i]) / c.second[i]);
            ++checked;
        }
    }
    // one channel past the cap must be root-free
    {
        const long long two_l_past =
            channels.empty() ? std::llabs(rp.dp.two_q) : channels.back().first + 2;
        const auto roots =
            find_eigenvalues(two_l_past, rp.dp.two_q, rp.dp.z_alpha, rp.dp.mu, cfg);
        if (!roots.empty()) complete = false;
    }

    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    JsonWriter w;
    w.open();
    w.field("levels_checked", checked);
    w.field("max_rel_err", max_rel);
    w.field("completeness_ok", complete);
    w.field("runtime_s", dt);
    w.close();
    write_output(o, w.os.str() + "\n", out);
    return exit_ok;
}

void apply_config_file(Options& o, const std::string& path, const CLI::App& app) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot read config file " + path);
    nlohmann::json j;
    f >> j;
    if (!j.is_object()) throw DomainError("config file must hold a JSON object");

    auto unset = [&](const std::string& flag) { return app.count(flag) == 0; };
    auto num = [&](const char* k) { return j.at(k).get<double>(); };
    auto integer = [&](const char* k) { return j.at(k).get<long long>(); };

    if (j.contains("mu") && unset("--mu")) o.mu = num("mu");
    if (j.contains("z_alpha") && unset("--z-alpha")) o.z_alpha = num("z_alpha");
    if (j.contains("a_cm") && unset("--a-cm")) o.a_cm = num("a_cm");
    if (j.contains("m0_g") && unset("--m0-g")) o.m0_g = num("m0_g");
    if (j.contains("gm") && unset("--gm")) o.gm = num("gm");
    if (j.contains("Z") && unset("--Z")) o.Z = static_cast<int>(integer("Z"));
    if (j.contains("two_q") && unset("--two-q")) o.two_q = integer("two_q");
    if (j.contains("max_levels") && unset("--max-levels")) o.max_levels = integer("max_levels");
    if (j.contains("format") && unset("--format")) o.format = j.at("format").get<std::string>();
    if (j.contains("out") && unset("--out")) o.out_path = j.at("out").get<std::string>();
    if (j.contains("n") && unset("--n")) o.wf_n = integer("n");
    if (j.contains("l2") && unset("--l2")) { o.wf_l2 = integer("l2"); o.h_l2 = o.wf_l2; }
    if (j.contains("m2") && unset("--m2")) o.h_m2 = integer("m2");
    if (j.contains("samples") && unset("--samples")) o.samples = integer("samples");
    if (j.contains("chi_min") && unset("--chi-min")) o.chi_min = num("chi_min");
    if (j.contains("chi_max") && unset("--chi-max")) o.chi_max = num("chi_max");
    if (j.contains("ntheta") && unset("--ntheta")) o.ntheta = integer("ntheta");
    if (j.contains("nphi") && unset("--nphi")) o.nphi = integer("nphi");
    if (j.contains("tol") && unset("--tol")) o.tol = num("tol");
    if (j.contains("bracket_pad") && unset("--bracket-pad")) o.bracket_pad = num("bracket_pad");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    std::string config_path;

    CLI::App app{"finite discrete spectrum of a dually-charged mesoatom on hyperbolic 3-space"};
    app.fallthrough();
    app.require_subcommand(1);

    double mu = 0, za = 0, a_cm = 0, m0 = 0, gm = 0;
    int Z = 0;
    app.add_option("--mu", mu, "m0*a*c/hbar");
    app.add_option("--z-alpha", za, "Z e^2/(hbar c), must be < 1/2");
    app.add_option("--two-q", o.two_q, "2q = 2 e g_m/(hbar c), integer");
    app.add_option("--a-cm", a_cm, "curvature radius [cm]");
    app.add_option("--m0-g", m0, "particle mass [g]");
    app.add_option("--Z", Z, "nuclear charge number");
    app.add_option("--gm", gm, "magnetic charge [esu-compatible]");
    app.add_option("--max-levels", o.max_levels, "enumeration cap");
    app.add_option("--format", o.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out_path, "output file (stdout when omitted)");
    app.add_option("--config", config_path, "JSON config; explicit flags win");
    app.add_option("--preset", o.preset, "named scenario: pion-cosmological")
        ->check(CLI::IsMember({"pion-cosmological"}));
    app.add_option("--n", o.wf_n, "radial number of the requested level");
    app.add_option("--l2", o.wf_l2, "2l of the requested level/harmonic");
    app.add_option("--m2", o.h_m2, "2m of the requested harmonic");
    app.add_option("--samples", o.samples, "radial sample count");
    app.add_option("--chi-min", o.chi_min, "lower chi");
    app.add_option("--chi-max", o.chi_max, "upper chi");
    app.add_option("--ntheta", o.ntheta, "harmonics grid rows");
    app.add_option("--nphi", o.nphi, "harmonics grid columns");
    app.add_option("--tol", o.tol, "oracle bisection tolerance on eps");
    app.add_option("--bracket-pad", o.bracket_pad, "oracle eps bracket padding");

    auto* sub_spectrum = app.add_subcommand("spectrum", "closed-form level table");
    auto* sub_wf = app.add_subcommand("wavefunction", "sampled radial profile + sidecar");
    auto* sub_harm = app.add_subcommand("harmonics", "monopole harmonic grid, both charts");
    auto* sub_verify = app.add_subcommand("verify", "shooting-oracle cross-check");
    auto* sub_caps = app.add_subcommand("caps", "existence caps N0 and |q|0");

    std::vector<std::string> rargs(args.rbegin(), args.rend());
    try {
        app.parse(rargs);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) { // --help
            out << app.help();
            return exit_ok;
        }
        err << "config error: " << ex.what() << "\n";
        return exit_config_error;
    }

    try {
        if (app.count("--mu")) o.mu = mu;
        if (app.count("--z-alpha")) o.z_alpha = za;
        if (app.count("--a-cm")) o.a_cm = a_cm;
        if (app.count("--m0-g")) o.m0_g = m0;
        if (app.count("--gm")) o.gm = gm;
        if (app.count("--Z")) o.Z = Z;
        if (app.count("--l2")) o.h_l2 = o.wf_l2;
        if (!config_path.empty()) apply_config_file(o, config_path, app);

        if (o.preset == "pion-cosmological") {
            // present cosmological scale: a = 1e28 cm, Z = 1, m0 = m(pi+)
            if (!o.a_cm) o.a_cm = 1e28;
            if (!o.m0_g) o.m0_g = cgs::m_pion_g;
            if (!o.Z) o.Z = 1;
            err << "# preset pion-cosmological: a_cm=1e+28, m0_g=" << g17(cgs::m_pion_g)
                << " (PDG charged pion), Z=1, CGS constants CODATA 2018\n";
        }

        if (sub_spectrum->parsed()) return cmd_spectrum(o, out);
        if (sub_caps->parsed()) return cmd_caps(o, out);
        if (sub_wf->parsed()) return cmd_wavefunction(o, out);
        if (sub_harm->parsed()) return cmd_harmonics(o, out);
        if (sub_verify->parsed()) return cmd_verify(o, out);
        err << "config error: no command given\n";
        return exit_config_error;
    } catch (const NoSuchLevel& ex) {
        err << "NoSuchLevel: " << ex.what() << "\n";
        return exit_no_such_level;
    } catch (const StiffnessFailure& ex) {
        err << "StiffnessFailure: " << ex.what() << "\n";
        return exit_oracle_error;
    } catch (const BranchError& ex) {
        err << "BranchError: " << ex.what() << "\n";
        return exit_oracle_error;
    } catch (const DivergentIntegral& ex) {
        err << "DivergentIntegral: " << ex.what() << "\n";
        return exit_oracle_error;
    } catch (const std::exception& ex) {
        err << "config error: " << ex.what() << "\n";
        return exit_config_error;
    }
}

} // namespace mesoatom::cli
