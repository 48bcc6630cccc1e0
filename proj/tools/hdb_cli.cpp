// Command-line surface over the derived-bracket engine: expression parsing,
// context files, verification suites, JSON/text reports.
#include <chrono>
#include <iostream>
#include <fstream>

#include "CLI11.hpp"

#include "hdb/context_doc.hpp"
#include "hdb/derived.hpp"
#include "hdb/fiber.hpp"
#include "hdb/linfty.hpp"
#include "hdb/parser.hpp"
#include "hdb/printer.hpp"
#include "hdb/report.hpp"

using namespace hdb;

namespace {

nlohmann::json structure_to_json(const LInftyStructure& s) {
    nlohmann::json j;
    j["names"] = s.names;
    j["parities"] = nlohmann::json::array();
    for (Parity p : s.parities) j["parities"].push_back(parity_name(p));
    j["arity-cap"] = s.arity_cap;
    j["table"] = nlohmann::json::array();
    for (const auto& [key, value] : s.table) {
        nlohmann::json row;
        row["key"] = key;
        row["value"] = nlohmann::json::array();
        for (const auto& c : value) row["value"].push_back(rat_to_string(c));
        j["table"].push_back(std::move(row));
    }
    return j;
}

LInftyStructure structure_from_json(const nlohmann::json& j) {
    LInftyStructure s;
    for (const auto& p : j.at("parities"))
        s.parities.push_back(p.get<std::string>() == "odd" ? Parity::odd : Parity::even);
    if (j.contains("names"))
        for (const auto& n : j.at("names")) s.names.push_back(n.get<std::string>());
    else
        for (size_t i = 0; i < s.parities.size(); ++i)
            s.names.push_back("e" + std::to_string(i));
    s.arity_cap = j.at("arity-cap").get<int>();
    for (const auto& row : j.at("table")) {
        std::vector<size_t> key = row.at("key").get<std::vector<size_t>>();
        std::vector<Rational> value;
        for (const auto& c : row.at("value"))
            value.push_back(rat_from_string(c.get<std::string>()));
        s.set_bracket(std::move(key), std::move(value));
    }
    if (auto err = s.validate()) throw std::invalid_argument("bad structure file: " + *err);
    return s;
}

LInftyStructure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open structure file: " + path);
    nlohmann::json j;
    in >> j;
    return structure_from_json(j);
}

std::string join_argv(int argc, char** argv) {
    std::string out;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) out += " ";
        out += argv[i];
    }
    return out;
}

// random odd generator in the kernel of P (safe for theorem-2 style suites)
Element random_kerp_odd(const ContextPtr& ctx, Rng& rng) {
    Element delta = ctx->random_element(rng, Parity::odd);
    return sub(delta, ctx->project(delta));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher derived bracket calculator"};
    app.require_subcommand(1);

    std::string ctx_path;
    std::string format = "text";
    uint64_t seed = 1;
    bool timing = false;
    app.add_option("--ctx", ctx_path, "context definition file (JSON)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed, "RNG seed");
    app.add_flag("--timing", timing, "report wall-clock time (off by default: determinism)");

    // ctx check
    auto* ctx_cmd = app.add_subcommand("ctx", "context operations");
    size_t ctx_trials = 100;
    auto* ctx_check = ctx_cmd->add_subcommand("check", "projector axiom suite");
    ctx_check->add_option("--trials", ctx_trials, "number of random pairs");

    // bracket --delta E --args E1..En
    auto* bracket_cmd = app.add_subcommand("bracket", "evaluate a derived bracket");
    std::string delta_src;
    std::vector<std::string> args_src;
    bracket_cmd->add_option("--delta", delta_src, "generator expression")->required();
    bracket_cmd->add_option("--args", args_src, "bracket arguments");

    // jacobi --delta E --n N --args ...
    auto* jacobi_cmd = app.add_subcommand("jacobi", "evaluate a Jacobiator");
    std::string j_delta_src;
    int j_n = 0;
    std::vector<std::string> j_args_src;
    jacobi_cmd->add_option("--delta", j_delta_src, "generator expression")->required();
    jacobi_cmd->add_option("--n", j_n, "arity")->required();
    jacobi_cmd->add_option("--args", j_args_src, "arguments (defaults to random)");

    // order --elem E
    auto* order_cmd = app.add_subcommand("order", "order of an element w.r.t. V");
    std::string order_src;
    order_cmd->add_option("--elem", order_src, "element expression")->required();

    // verify <suite>
    auto* verify_cmd = app.add_subcommand("verify", "randomized verification suites");
    verify_cmd->require_subcommand(1);
    size_t v_trials = 20;
    int v_nmax = 4;
    std::string v_delta_src;
    auto add_verify_opts = [&](CLI::App* sub, bool with_delta) {
        sub->add_option("--trials", v_trials, "number of trials");
        sub->add_option("--nmax", v_nmax, "maximum arity");
        if (with_delta) sub->add_option("--delta", v_delta_src, "explicit generator");
    };
    auto* v_t1 = verify_cmd->add_subcommand("theorem1", "Jacobiator = bracket of Delta^2");
    add_verify_opts(v_t1, false);
    auto* v_t2 = verify_cmd->add_subcommand("theorem2", "derivation generators, PdP = Pd");
    add_verify_opts(v_t2, false);
    auto* v_oc =
        verify_cmd->add_subcommand("order-corollary", "ord(Delta^2) <= r kills arities > r");
    add_verify_opts(v_oc, true);
    auto* v_fb = verify_cmd->add_subcommand("fiber", "cocylinder extended brackets");
    add_verify_opts(v_fb, true);

    // linfty from-q | to-q | check
    auto* linfty_cmd = app.add_subcommand("linfty", "structure-constant tables");
    linfty_cmd->require_subcommand(1);
    std::string q_src, structure_path, out_path;
    int arity_cap = 4, l_nmax = 4;
    auto* l_fromq = linfty_cmd->add_subcommand("from-q", "Maclaurin brackets of a field Q");
    l_fromq->add_option("--q", q_src, "odd vector field expression")->required();
    l_fromq->add_option("--arity-cap", arity_cap, "largest bracket arity");
    l_fromq->add_option("--out", out_path, "write the structure JSON here");
    auto* l_toq = linfty_cmd->add_subcommand("to-q", "generating field of a structure");
    l_toq->add_option("--structure", structure_path, "structure file (JSON)")->required();
    auto* l_check = linfty_cmd->add_subcommand("check", "all Jacobi identities, both paths");
    l_check->add_option("--structure", structure_path, "structure file (JSON)")->required();
    l_check->add_option("--nmax", l_nmax, "maximum arity");

    // symbol --delta E
    auto* symbol_cmd = app.add_subcommand("symbol", "principal symbol of an operator");
    std::string sym_src;
    symbol_cmd->add_option("--delta", sym_src, "operator expression")->required();

    // global flags remain usable after a subcommand name
    auto enable_fallthrough = [](CLI::App* a, auto&& self) -> void {
        a->fallthrough();
        for (CLI::App* sub : a->get_subcommands({})) self(sub, self);
    };
    enable_fallthrough(&app, enable_fallthrough);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto started = std::chrono::steady_clock::now();
    ReportDoc report;
    report.command = join_argv(argc, argv);
    report.seed = seed;

    try {
        ContextPtr ctx;
        auto need_ctx = [&]() -> const ContextPtr& {
            if (!ctx) {
                if (ctx_path.empty())
                    throw std::runtime_error("this subcommand requires --ctx FILE");
                ctx = context_from_doc(load_context_doc(ctx_path));
            }
            return ctx;
        };

        if (*ctx_check) {
            auto r = check_projector_axioms(*need_ctx(), ctx_trials, seed);
            report = report_from_projector(report.command, seed, r);
        } else if (*bracket_cmd) {
            need_ctx();
            DerivedEngine engine(ctx, parse_element(delta_src, ctx));
            std::vector<Element> args;
            for (const auto& s : args_src) args.push_back(parse_element(s, ctx));
            Element value = engine.derived_bracket(args);
            ReportDoc::Case c;
            c.inputs.push_back("delta=" + delta_src);
            for (const auto& s : args_src) c.inputs.push_back(s);
            c.residual = print_element(value);
            report.cases.push_back(std::move(c));
        } else if (*jacobi_cmd) {
            need_ctx();
            DerivedEngine engine(ctx, parse_element(j_delta_src, ctx));
            std::vector<Element> args;
            for (const auto& s : j_args_src) args.push_back(parse_element(s, ctx));
            if (!args.empty() && static_cast<int>(args.size()) != j_n)
                throw std::runtime_error("--n disagrees with the number of --args");
            Rng rng(seed);
            while (static_cast<int>(args.size()) < j_n) args.push_back(ctx->random_v(rng));
            Element value = engine.jacobiator(args);
            if (!ctx->is_zero(value)) {
                report.pass = false;
                ReportDoc::Case c;
                c.inputs.push_back("delta=" + j_delta_src);
                for (const auto& a : args) c.inputs.push_back(print_element(a));
                c.residual = print_element(value);
                report.cases.push_back(std::move(c));
            }
        } else if (*order_cmd) {
            Element e = parse_element(order_src, need_ctx());
            int ord = ctx->order(e);
            ReportDoc::Case c;
            c.inputs.push_back(order_src);
            c.residual = ord == kOrderUndefined ? "order undefined (zero element)"
                                                : "order=" + std::to_string(ord);
            report.cases.push_back(std::move(c));
        } else if (*v_t1) {
            report = report_from_jacobi(report.command,
                                        verify_theorem1(need_ctx(), v_nmax, v_trials, seed));
        } else if (*v_t2) {
            need_ctx();
            auto factory = [&](Rng& rng) {
                return inner_derivation(ctx, random_kerp_odd(ctx, rng));
            };
            report = report_from_jacobi(
                report.command, verify_theorem2(ctx, factory, v_nmax, v_trials, seed));
        } else if (*v_oc) {
            need_ctx();
            Rng rng(seed);
            Element delta = v_delta_src.empty() ? ctx->random_element(rng, Parity::odd)
                                                : parse_element(v_delta_src, ctx);
            DerivedEngine engine(ctx, delta);
            int r = ctx->order(engine.squared().delta());
            if (r == kOrderUndefined) r = 0;  // Delta^2 = 0: all identities hold
            auto jr = check_order_corollary(engine, r, v_nmax, v_trials, seed);
            jr.note = "r=" + std::to_string(r) +
                      (jr.note.empty() ? "" : "; " + jr.note);
            report = report_from_jacobi(report.command, jr);
        } else if (*v_fb) {
            need_ctx();
            Rng rng(seed);
            Element delta = v_delta_src.empty() ? random_kerp_odd(ctx, rng)
                                                : parse_element(v_delta_src, ctx);
            FiberEngine engine(ctx, inner_derivation(ctx, delta));
            report = report_from_jacobi(report.command,
                                        verify_fiber_linfty(engine, v_nmax, v_trials, seed));
        } else if (*l_fromq) {
            Element e = parse_element(q_src, need_ctx());
            if (!std::holds_alternative<VectorField>(e))
                throw std::runtime_error("linfty from-q requires a vect context");
            LInftyStructure s = brackets_from_q(std::get<VectorField>(e), arity_cap);
            nlohmann::json j = structure_to_json(s);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << j.dump(2) << "\n";
            }
            ReportDoc::Case c;
            c.inputs.push_back("q=" + q_src);
            c.residual = j.dump();
            report.cases.push_back(std::move(c));
        } else if (*l_toq) {
            LInftyStructure s = load_structure(structure_path);
            ReportDoc::Case c;
            c.inputs.push_back(structure_path);
            c.residual = print_field(q_from_brackets(s));
            report.cases.push_back(std::move(c));
        } else if (*l_check) {
            report = report_from_jacobi(report.command,
                                        check_jacobi_structure(load_structure(structure_path),
                                                               l_nmax));
        } else if (*symbol_cmd) {
            need_ctx();
            Element e = parse_element(sym_src, ctx);
            if (!std::holds_alternative<DiffOperator>(e))
                throw std::runtime_error("symbol requires the ops context");
            ReportDoc::Case c;
            c.inputs.push_back("delta=" + sym_src);
            c.residual = print_poly(principal_symbol(std::get<DiffOperator>(e)));
            report.cases.push_back(std::move(c));
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (timing)
        report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();

    if (format == "json")
        std::cout << report_to_json(report).dump(2) << "\n";
    else
        std::cout << report_to_text(report);
    return report.pass ? 0 : 1;
}
