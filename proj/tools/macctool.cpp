// macctool: secrecy rate bounds, region search, and binning simulation for
// the two-sender channel with an eavesdropping encoder.
//
// Exit codes: 0 success, 1 usage error, 2 input-format error,
// 3 computational guard.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "macc/binning.hpp"
#include "macc/channel_io.hpp"
#include "macc/errors.hpp"
#include "macc/info.hpp"
#include "macc/regions.hpp"

using json = nlohmann::ordered_json;

namespace {

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

/// "v" or inclusive "start:step:end".
std::vector<double> parse_sweep(const std::string& spec, const char* name) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = spec.find(':', pos);
        const std::string tok = spec.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            parts.push_back(std::stod(tok));
        } catch (...) {
            throw std::invalid_argument(std::string(name) + ": cannot parse \"" + spec + "\"");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() == 1) return parts;
    if (parts.size() != 3)
        throw std::invalid_argument(std::string(name) + ": expected a value or start:step:end");
    const double start = parts[0], step = parts[1], end = parts[2];
    if (step <= 0.0 || end < start)
        throw std::invalid_argument(std::string(name) + ": need step > 0 and end >= start");
    std::vector<double> out;
    for (double v = start; v <= end + 1e-9; v += step) out.push_back(std::min(v, end));
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw macc::FormatError("cannot write " + path);
    out << text;
}

struct ChannelArgs {
    std::string file;
    std::string builtin;

    macc::MaccChannel load() const {
        if (!builtin.empty()) {
            if (builtin == "halfduplex") return macc::build_halfduplex_channel();
            throw std::invalid_argument("unknown builtin channel \"" + builtin + "\"");
        }
        if (file.empty()) throw std::invalid_argument("give --channel <file> or --builtin halfduplex");
        return macc::load_channel_json(file);
    }

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--channel", file, "channel-spec JSON file");
        cmd->add_option("--builtin", builtin, "builtin channel name (halfduplex)");
    }
};

struct PolicyArgs {
    std::vector<double> px1;
    std::vector<double> px2;
    bool uniform = false;
    std::string policy_file;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--px1", px1, "input pmf for X1")->delimiter(',');
        cmd->add_option("--px2", px2, "input pmf for X2")->delimiter(',');
        cmd->add_flag("--uniform", uniform, "uniform product inputs");
        cmd->add_option("--policy", policy_file, "auxiliary policy JSON file");
    }

    bool has_aux() const { return !policy_file.empty(); }

    macc::AuxInputPolicy load_aux() const { return macc::load_aux_policy_json(policy_file); }

    macc::ProductInputPolicy load_product(const macc::MaccChannel& ch) const {
        if (uniform) return {macc::Pmf::uniform(ch.nx1()), macc::Pmf::uniform(ch.nx2())};
        if (px1.empty() || px2.empty())
            throw std::invalid_argument("give --px1 and --px2 probability lists, or --uniform");
        try {
            return {macc::Pmf(px1), macc::Pmf(px2)};
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string("input pmf: ") + e.what());
        }
    }
};

json manifest(const std::string& command, const std::vector<std::string>& inputs,
              json parameters, std::uint64_t seed, const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["inputs"] = inputs;
    m["parameters"] = std::move(parameters);
    m["seed"] = seed;
    m["outputs"] = outputs;
    return m;
}

std::vector<std::string> channel_inputs(const ChannelArgs& ch, const PolicyArgs* pol = nullptr) {
    std::vector<std::string> inputs;
    if (!ch.file.empty()) inputs.push_back(ch.file);
    if (!ch.builtin.empty()) inputs.push_back("builtin:" + ch.builtin);
    if (pol && !pol->policy_file.empty()) inputs.push_back(pol->policy_file);
    return inputs;
}

// ---- info ----------------------------------------------------------------

int cmd_info(const ChannelArgs& chargs, const PolicyArgs& polargs, bool as_json,
             const std::string& out_path) {
    using macc::Axis;
    const macc::MaccChannel ch = chargs.load();

    std::vector<std::pair<std::string, double>> rows;
    if (polargs.has_aux()) {
        const macc::AuxInputPolicy pol = polargs.load_aux();
        const macc::JointPmf j = macc::build_joint(ch, pol);
        rows = {
            {"I(X1;Y|X2)", macc::mutual_information(j, {Axis::X1}, {Axis::Y}, {Axis::X2})},
            {"I(X2;Y|X1)", macc::mutual_information(j, {Axis::X2}, {Axis::Y}, {Axis::X1})},
            {"I(X2;Y1|X1)", macc::mutual_information(j, {Axis::X2}, {Axis::Y1}, {Axis::X1})},
            {"I(X1,X2;Y)", macc::mutual_information(j, {Axis::X1, Axis::X2}, {Axis::Y})},
            {"I(X1;Y|U,V)", macc::mutual_information(j, {Axis::X1}, {Axis::Y}, {Axis::U, Axis::V})},
            {"I(V;Y|U,X1)", macc::mutual_information(j, {Axis::V}, {Axis::Y}, {Axis::U, Axis::X1})},
            {"I(V;Y1|U,X1)", macc::mutual_information(j, {Axis::V}, {Axis::Y1}, {Axis::U, Axis::X1})},
            {"I(X1,V;Y|U)", macc::mutual_information(j, {Axis::X1, Axis::V}, {Axis::Y}, {Axis::U})},
            {"I(X1,V;Y)", macc::mutual_information(j, {Axis::X1, Axis::V}, {Axis::Y})},
        };
    } else {
        const macc::ProductInputPolicy pol = polargs.load_product(ch);
        const macc::JointPmf j = macc::build_joint(ch, pol);
        rows = {
            {"I(X1;Y|X2)", macc::mutual_information(j, {Axis::X1}, {Axis::Y}, {Axis::X2})},
            {"I(X2;Y|X1)", macc::mutual_information(j, {Axis::X2}, {Axis::Y}, {Axis::X1})},
            {"I(X2;Y1|X1)", macc::mutual_information(j, {Axis::X2}, {Axis::Y1}, {Axis::X1})},
            {"I(X1,X2;Y)", macc::mutual_information(j, {Axis::X1, Axis::X2}, {Axis::Y})},
        };
    }

    if (as_json) {
        json params;
        params["uniform"] = polargs.uniform;
        if (!polargs.px1.empty()) params["px1"] = polargs.px1;
        if (!polargs.px2.empty()) params["px2"] = polargs.px2;
        json doc;
        doc["manifest"] = manifest("info", channel_inputs(chargs, &polargs), std::move(params), 0,
                                   out_path.empty() ? std::vector<std::string>{}
                                                    : std::vector<std::string>{out_path});
        json measures;
        for (const auto& [name, value] : rows) measures[name] = value;
        doc["measures"] = std::move(measures);
        write_text(out_path, doc.dump(2) + "\n");
    } else {
        std::string text;
        for (const auto& [name, value] : rows) {
            text += name;
            text.append(name.size() < 14 ? 14 - name.size() : 1, ' ');
            text += fmt6(value) + "\n";
        }
        write_text(out_path, text);
    }
    return 0;
}

// ---- region ---------------------------------------------------------------

json policy_to_json(const macc::SupportPoint& sp) {
    json p;
    if (sp.product) {
        p["px1"] = std::vector<double>(sp.product->pX1.probs().begin(), sp.product->pX1.probs().end());
        p["px2"] = std::vector<double>(sp.product->pX2.probs().begin(), sp.product->pX2.probs().end());
    } else if (sp.aux) {
        p["pU"] = std::vector<double>(sp.aux->pU.probs().begin(), sp.aux->pU.probs().end());
        auto rows = [](const macc::CondPmf& m) {
            std::vector<std::vector<double>> out;
            for (int r = 0; r < m.rows(); ++r)
                out.emplace_back(m.row(r).probs().begin(), m.row(r).probs().end());
            return out;
        };
        p["pVgivenU"] = rows(sp.aux->pVgivenU);
        p["pX1givenU"] = rows(sp.aux->pX1givenU);
        p["pX2givenV"] = rows(sp.aux->pX2givenV);
    }
    return p;
}

int cmd_region(const ChannelArgs& chargs, const macc::SearchConfig& cfg,
               const std::string& out_path, const std::string& support_path) {
    const macc::MaccChannel ch = chargs.load();
    const macc::SearchResult result = macc::search_inner_region(ch, cfg);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";

    std::string csv = "r1,r2\n";
    for (const auto& v : result.hull.vertices) csv += fmt6(v.r1) + "," + fmt6(v.r2) + "\n";
    write_text(out_path, csv);

    if (!support_path.empty()) {
        json params;
        params["gridStep"] = cfg.grid_step;
        params["auxCardU"] = cfg.aux_card_u;
        params["auxCardV"] = cfg.aux_card_v;
        params["randomSamples"] = cfg.random_samples;
        std::vector<std::string> outputs;
        if (!out_path.empty()) outputs.push_back(out_path);
        outputs.push_back(support_path);
        json doc;
        doc["manifest"] =
            manifest("region", channel_inputs(chargs), std::move(params), cfg.seed, outputs);
        json support = json::array();
        for (const auto& sp : result.support) {
            json entry;
            entry["policy"] = policy_to_json(sp);
            entry["c1"] = sp.triple.c1;
            entry["c2_raw"] = sp.triple.c2;
            entry["c12_raw"] = sp.triple.c12;
            entry["kind"] = macc::bound_kind_name(sp.triple.kind);
            support.push_back(std::move(entry));
        }
        doc["support"] = std::move(support);
        write_text(support_path, doc.dump(2) + "\n");
    }
    return 0;
}

// ---- halfduplex -----------------------------------------------------------

int cmd_halfduplex(const std::string& p_spec, const std::string& d_spec, const std::string& q_spec,
                   bool as_json, const std::string& out_path) {
    const auto ps = parse_sweep(p_spec, "--p");
    const auto ds = parse_sweep(d_spec, "--d");
    const auto qs = parse_sweep(q_spec, "--q");
    for (double p : ps)
        for (double d : ds)
            if (p + d > 1.0 + 1e-12)
                throw std::invalid_argument("half-duplex sweep reaches P + D = " +
                                            std::to_string(p + d) + " > 1");

    std::vector<std::array<double, 6>> table;
    for (double p : ps)
        for (double d : ds)
            for (double q : qs) {
                const macc::RateTriple t = macc::halfduplex_triple({p, d, q});
                table.push_back({p, d, q, t.c1, t.c2, t.c12});
            }

    if (as_json) {
        json params;
        params["p"] = p_spec;
        params["d"] = d_spec;
        params["q"] = q_spec;
        json doc;
        doc["manifest"] = manifest("halfduplex", {}, std::move(params), 0,
                                   out_path.empty() ? std::vector<std::string>{}
                                                    : std::vector<std::string>{out_path});
        json rows = json::array();
        for (const auto& r : table)
            rows.push_back(json{{"p", r[0]}, {"d", r[1]}, {"q", r[2]},
                                {"c1", r[3]}, {"c2", r[4]}, {"c12", r[5]}});
        doc["rows"] = std::move(rows);
        write_text(out_path, doc.dump(2) + "\n");
    } else {
        std::string csv = "p,d,q,c1,c2,c12\n";
        for (const auto& r : table) {
            csv += fmt6(r[0]);
            for (int i = 1; i < 6; ++i) csv += "," + fmt6(r[i]);
            csv += "\n";
        }
        write_text(out_path, csv);
    }
    return 0;
}

// ---- gaussian ---------------------------------------------------------------

int cmd_gaussian(double p1, double p2, double n0, const std::string& n1_spec, bool as_json,
                 const std::string& out_path) {
    const auto n1s = parse_sweep(n1_spec, "--n1");
    std::vector<std::array<double, 7>> table;
    for (double n1 : n1s) {
        const macc::RateTriple t = macc::gaussian_triple({p1, p2, n0, n1});
        table.push_back({p1, p2, n0, n1, t.c1, t.c2, t.c12});
    }

    if (as_json) {
        json params;
        params["p1"] = p1;
        params["p2"] = p2;
        params["n0"] = n0;
        params["n1"] = n1_spec;
        json doc;
        doc["manifest"] = manifest("gaussian", {}, std::move(params), 0,
                                   out_path.empty() ? std::vector<std::string>{}
                                                    : std::vector<std::string>{out_path});
        json rows = json::array();
        for (const auto& r : table)
            rows.push_back(json{{"p1", r[0]}, {"p2", r[1]}, {"n0", r[2]}, {"n1", r[3]},
                                {"c1", r[4]}, {"c2", r[5]}, {"c12", r[6]}});
        doc["rows"] = std::move(rows);
        write_text(out_path, doc.dump(2) + "\n");
    } else {
        std::string csv = "p1,p2,n0,n1,c1,c2,c12\n";
        for (const auto& r : table) {
            csv += fmt6(r[0]);
            for (int i = 1; i < 7; ++i) csv += "," + fmt6(r[i]);
            csv += "\n";
        }
        write_text(out_path, csv);
    }
    return 0;
}

// ---- simulate ---------------------------------------------------------------

int cmd_simulate(const ChannelArgs& chargs, const PolicyArgs& polargs, const macc::SimConfig& cfg,
                 const std::string& out_path) {
    const macc::MaccChannel ch = chargs.load();
    const macc::AuxInputPolicy pol = polargs.has_aux()
                                         ? polargs.load_aux()
                                         : macc::embed_product_policy(polargs.load_product(ch));

    const macc::Codebook cb = macc::generate_codebook(ch, pol, cfg);
    const macc::SimStats pe = macc::run_error_trials(ch, pol, cfg);

    json params;
    params["n"] = cfg.n;
    params["r1"] = cfg.rate1;
    params["r2"] = cfg.rate2;
    params["trials"] = cfg.trials;
    params["epsilon"] = cfg.epsilon;
    json doc;
    doc["manifest"] = manifest("simulate", channel_inputs(chargs, &polargs), std::move(params),
                               cfg.seed,
                               out_path.empty() ? std::vector<std::string>{}
                                                : std::vector<std::string>{out_path});
    doc["m1"] = cb.m1;
    doc["m2"] = cb.m2;
    doc["binSize"] = cb.bin_size;
    doc["rate3"] = cb.rate3;
    doc["peHat"] = *pe.pe_hat;
    doc["peStdErr"] = *pe.pe_std_err;
    try {
        const macc::SimStats eq = macc::exact_equivocation(cb, ch);
        doc["equivocationBits"] = *eq.equivocation_bits;
        doc["equivocationPerSymbol"] = *eq.equivocation_per_symbol;
    } catch (const macc::GuardError& e) {
        doc["equivocationBits"] = nullptr;
        doc["equivocationPerSymbol"] = nullptr;
        doc["equivocationSkipped"] = e.what();
    }
    doc["codewordCollisions"] = pe.codeword_collisions;
    doc["resampleCount"] = pe.u_resamples;
    doc["seed"] = cfg.seed;
    write_text(out_path, doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"secrecy rate regions and binning simulation for the eavesdropping-encoder MAC"};
    app.require_subcommand(1);

    // info
    auto* info = app.add_subcommand("info", "mutual-information table for a channel and input law");
    ChannelArgs info_ch;
    PolicyArgs info_pol;
    bool info_json = false;
    std::string info_out;
    info_ch.add_flags(info);
    info_pol.add_flags(info);
    info->add_flag("--json", info_json, "emit JSON instead of a table");
    info->add_option("--out", info_out, "output path (default stdout)");

    // region
    auto* region = app.add_subcommand("region", "achievable-region search (CSV hull + JSON support)");
    ChannelArgs region_ch;
    macc::SearchConfig search_cfg;
    std::string region_out, region_support;
    region_ch.add_flags(region);
    region->add_option("--grid-step", search_cfg.grid_step, "simplex grid step")->capture_default_str();
    region->add_option("--aux-u", search_cfg.aux_card_u, "auxiliary |U| for random policies")
        ->capture_default_str();
    region->add_option("--aux-v", search_cfg.aux_card_v, "auxiliary |V| for random policies")
        ->capture_default_str();
    region->add_option("--samples", search_cfg.random_samples, "random auxiliary policy count")
        ->capture_default_str();
    region->add_option("--seed", search_cfg.seed, "rng seed")->capture_default_str();
    region->add_option("--out", region_out, "hull CSV path (default stdout)");
    region->add_option("--support", region_support, "support-point JSON path");

    // halfduplex
    auto* hd = app.add_subcommand("halfduplex", "closed-form half-duplex triples over a sweep");
    std::string hd_p = "0.5", hd_d = "0", hd_q = "0.5";
    bool hd_json = false;
    std::string hd_out;
    hd->add_option("--p", hd_p, "P[X1=1], value or start:step:end")->capture_default_str();
    hd->add_option("--d", hd_d, "P[X1=null], value or start:step:end")->capture_default_str();
    hd->add_option("--q", hd_q, "P[X2=1], value or start:step:end")->capture_default_str();
    hd->add_flag("--json", hd_json, "emit JSON rows");
    hd->add_option("--out", hd_out, "output path (default stdout)");

    // gaussian
    auto* gauss = app.add_subcommand("gaussian", "closed-form scalar Gaussian triple");
    double g_p1 = 1.0, g_p2 = 1.0, g_n0 = 1.0;
    std::string g_n1 = "1";
    bool g_json = false;
    std::string g_out;
    gauss->add_option("--p1", g_p1, "power of user 1")->capture_default_str();
    gauss->add_option("--p2", g_p2, "power of user 2")->capture_default_str();
    gauss->add_option("--n0", g_n0, "receiver noise variance")->capture_default_str();
    gauss->add_option("--n1", g_n1, "eavesdropper noise variance, value or sweep")->capture_default_str();
    gauss->add_flag("--json", g_json, "emit JSON rows");
    gauss->add_option("--out", g_out, "output path (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "binning-code Monte Carlo plus exact equivocation");
    ChannelArgs sim_ch;
    PolicyArgs sim_pol;
    macc::SimConfig sim_cfg;
    std::string sim_out;
    sim_ch.add_flags(sim);
    sim_pol.add_flags(sim);
    sim->add_option("--n", sim_cfg.n, "block length")->required();
    sim->add_option("--r1", sim_cfg.rate1, "rate of user 1 (bits/use)")->capture_default_str();
    sim->add_option("--r2", sim_cfg.rate2, "rate of user 2 (bits/use)")->capture_default_str();
    sim->add_option("--trials", sim_cfg.trials, "Monte Carlo trials")->capture_default_str();
    sim->add_option("--epsilon", sim_cfg.epsilon, "typicality slack")->capture_default_str();
    sim->add_option("--seed", sim_cfg.seed, "rng seed")->capture_default_str();
    sim->add_option("--out", sim_out, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (info->parsed()) return cmd_info(info_ch, info_pol, info_json, info_out);
        if (region->parsed()) return cmd_region(region_ch, search_cfg, region_out, region_support);
        if (hd->parsed()) return cmd_halfduplex(hd_p, hd_d, hd_q, hd_json, hd_out);
        if (gauss->parsed()) return cmd_gaussian(g_p1, g_p2, g_n0, g_n1, g_json, g_out);
        if (sim->parsed()) return cmd_simulate(sim_ch, sim_pol, sim_cfg, sim_out);
    } catch (const macc::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const macc::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
