// Command-line surface of the enorbit library: JSON in, JSON (or text) out.
//
// Exit codes: 0 success, 1 "not closed" classify answer, 2 unsupported input
// (non-split spectrum, extension tower, ...), 3 schema/parse errors, 4 internal.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "enorbit/enorbit.hpp"
#include "enorbit/json_io.hpp"

using namespace enorbit;

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::non_split_spectrum:
        case errc::extension_required:
        case errc::unsupported:
        case errc::domain_mismatch:
        case errc::not_nilpotent_fiber: return 2;
        case errc::parse_error:
        case errc::invalid_seed:
        case errc::size_mismatch:
        case errc::group_membership: return 3;
        case errc::singular_matrix:
        case errc::internal: return 4;
    }
    return 4;
}

json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
        std::ifstream in(arg);
        if (!in) fail(errc::parse_error, "cannot open input file '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse_error, "input is not valid JSON");
    return j;
}

struct CommonOpts {
    std::string group;
    std::size_t rank = 0;
    bool has_rank = false;
    std::string format = "json";
    std::uint64_t seed = 0;
};

std::optional<GroupDescriptor> descriptor_from_flags(const CommonOpts& c) {
    if (c.group.empty()) return std::nullopt;
    if (!c.has_rank) fail(errc::parse_error, "--group needs --rank");
    const GroupKind kind = kind_from_string(c.group);
    switch (kind) {
        case GroupKind::GL: return GroupDescriptor::gl(c.rank);
        case GroupKind::SP: return GroupDescriptor::sp(c.rank);
        case GroupKind::OODD: return GroupDescriptor::o_odd(c.rank);
        case GroupKind::OEVEN: return GroupDescriptor::o_even(c.rank);
        case GroupKind::GRAM: fail(errc::parse_error, "pass gram groups inside the point JSON");
    }
    return std::nullopt;
}

void emit(const json& j, const std::string& format, const std::string& text_summary) {
    if (format == "text")
        std::cout << text_summary << "\n";
    else
        std::cout << j.dump(2) << "\n";
}

std::vector<Scalar> parse_grid(const std::string& csv) {
    std::vector<Scalar> grid;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        grid.push_back(Scalar(rational_from_string(item)));
    }
    if (grid.empty()) fail(errc::parse_error, "empty coefficient grid");
    return grid;
}

std::string describe_factors(const std::vector<StabFactor>& fs) {
    if (fs.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) s += " x ";
        s += kind_name(fs[i].kind) + "_" + std::to_string(fs[i].rank);
    }
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants, canonical representatives, closedness decisions and "
                 "descendants for enhanced standard representations of the classical groups"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string point_arg, invariants_arg, seed_json_arg, grid_csv = "-1,1,2";
    std::size_t max_rank = 2, trials = 50;
    bool no_probes = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--group", common.group, "group kind: gl|sp|oodd|oeven");
        cmd->add_option("--rank", common.rank, "group rank n")
            ->each([&](const std::string&) { common.has_rank = true; });
        cmd->add_option("--format", common.format, "output format: json|text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--seed", common.seed, "sampling seed (default 0)");
    };

    auto* c_inv = app.add_subcommand("invariants", "evaluate the quotient map on a point");
    add_common(c_inv);
    c_inv->add_option("--point", point_arg, "point as inline JSON or a file path")->required();

    auto* c_cls = app.add_subcommand("classify", "decide whether the orbit of a point is closed");
    add_common(c_cls);
    c_cls->add_option("--point", point_arg, "point as inline JSON or a file path")->required();

    auto* c_rep = app.add_subcommand("represent",
                                     "canonical representative from a nilpotent-fiber "
                                     "invariant vector");
    add_common(c_rep);
    c_rep->add_option("--invariants", invariants_arg, "invariant vector JSON or file")->required();

    auto* c_desc = app.add_subcommand("descend", "stabilizer and normal-space decomposition of a "
                                                 "closed-orbit seed");
    add_common(c_desc);
    c_desc->add_option("--seed-json", seed_json_arg, "closed seed (or nilpotent seed) JSON or file")
        ->required();

    auto* c_wit = app.add_subcommand("witness", "explicit MVW stabilizer element of a GL seed");
    add_common(c_wit);
    c_wit->add_option("--seed-json", seed_json_arg, "GL nilpotent seed JSON or file")->required();

    auto* c_samp = app.add_subcommand("sample", "deterministic sample of a group element and a point");
    add_common(c_samp);

    auto* c_chk = app.add_subcommand("check", "run the oracle suites");
    add_common(c_chk);
    c_chk->add_option("--max-rank", max_rank, "rank bound for the catalog crosscheck (<= 4)");
    c_chk->add_option("--grid", grid_csv, "coefficient grid, comma-separated rationals");
    c_chk->add_option("--trials", trials, "invariance trials per kind and rank");
    c_chk->add_flag("--no-probes", no_probes, "skip degeneration probes in the crosscheck");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        const auto flag_group = descriptor_from_flags(common);

        if (c_inv->parsed()) {
            const EnhancedPoint p = point_from_json(load_json_arg(point_arg), flag_group);
            const InvariantVector iv = quotient_map(p);
            std::string text = "traces:";
            for (const auto& t : iv.traces) text += " " + t.str();
            text += "\npairings:";
            for (const auto& t : iv.pairings) text += " " + t.str();
            emit(to_json(iv), common.format, text);
            return 0;
        }
        if (c_cls->parsed()) {
            const EnhancedPoint p = point_from_json(load_json_arg(point_arg), flag_group);
            const ClassificationReport r = classify(p);
            emit(to_json(r), common.format,
                 std::string(r.closed ? "closed" : "not closed") + " (orbit dim " +
                     std::to_string(r.orbit_dim) + ", fiber minimum " +
                     std::to_string(r.fiber_min_dim) + ", stabilizer " +
                     describe_factors(r.predicted) + ")");
            return r.closed ? 0 : 1;
        }
        if (c_rep->parsed()) {
            const InvariantVector iv = invariants_from_json(load_json_arg(invariants_arg),
                                                            flag_group);
            GroupDescriptor d = flag_group ? *flag_group : [&] {
                switch (iv.kind) {
                    case GroupKind::SP: return GroupDescriptor::sp(iv.rank);
                    case GroupKind::OODD: return GroupDescriptor::o_odd(iv.rank);
                    case GroupKind::OEVEN: return GroupDescriptor::o_even(iv.rank);
                    default: return GroupDescriptor::gl(iv.rank);
                }
            }();
            const EnhancedPoint p = representative_from_invariants(d, iv);
            emit(to_json(p), common.format, "representative:\n" + to_json(p).dump(2));
            return 0;
        }
        if (c_desc->parsed()) {
            const json j = load_json_arg(seed_json_arg);
            ClosedSeed seed;
            if (j.contains("coeffs")) {
                // a bare nilpotent seed: wrap it as the purely nilpotent closed seed
                NilpotentSeed ns = nilpotent_seed_from_json(j);
                seed.kind = ns.kind;
                seed.n = ns.n;
                if (ns.kind == GroupKind::GL)
                    seed.blocks.push_back({Rational(0), std::move(ns)});
                else
                    seed.zero = std::move(ns);
            } else {
                seed = closed_seed_from_json(j);
            }
            const DescendantReport r = descend(seed);
            emit(to_json(r), common.format,
                 "H = " + describe_factors(r.h_factors) + ", mult_k = " +
                     std::to_string(r.mult_k) + ", gamma = " + std::to_string(r.gamma) +
                     ", dim N = " + std::to_string(r.normal_dim));
            return 0;
        }
        if (c_wit->parsed()) {
            const NilpotentSeed s = nilpotent_seed_from_json(load_json_arg(seed_json_arg));
            const MvwElement e = mvw_stabilizer_witness(s);
            emit(to_json(e), common.format, "g0 = " + e.g.str() + ", delta = -1");
            return 0;
        }
        if (c_samp->parsed()) {
            if (!flag_group) fail(errc::parse_error, "sample needs --group and --rank");
            auto [e, p] = sample(*flag_group, common.seed);
            json j{{"element", to_json(e)}, {"point", to_json(p)}};
            emit(j, common.format, "g = " + e.g.str() + "\nX = " + p.X.str());
            return 0;
        }
        if (c_chk->parsed()) {
            json reports = json::array();
            bool ok = true;
            for (GroupKind kind :
                 {GroupKind::GL, GroupKind::SP, GroupKind::OODD, GroupKind::OEVEN}) {
                for (std::size_t n = 1; n <= std::min<std::size_t>(max_rank, 4); ++n) {
                    GroupDescriptor d = kind == GroupKind::GL    ? GroupDescriptor::gl(n)
                                        : kind == GroupKind::SP  ? GroupDescriptor::sp(n)
                                        : kind == GroupKind::OODD ? GroupDescriptor::o_odd(n)
                                                                  : GroupDescriptor::o_even(n);
                    SuiteReport r = invariance_suite(d, trials, common.seed + n);
                    ok = ok && r.passed();
                    json jr = to_json(r);
                    jr["suite"] = "invariance";
                    jr["group"] = to_json(d);
                    reports.push_back(std::move(jr));
                }
            }
            SuiteReport cross = classification_crosscheck(max_rank, parse_grid(grid_csv),
                                                          !no_probes);
            ok = ok && cross.passed();
            json jc = to_json(cross);
            jc["suite"] = "classification_crosscheck";
            reports.push_back(std::move(jc));
            emit(json{{"passed", ok}, {"suites", std::move(reports)}}, common.format,
                 ok ? "all oracle suites passed" : "oracle suites FAILED");
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        json err{{"error", {{"code", errc_name(e.code())}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 4;
    }
    return 3;
}
