#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfk/catalog.hpp"
#include "cfk/complex.hpp"
#include "cfk/errors.hpp"
#include "cfk/invariants.hpp"
#include "cfk/io.hpp"
#include "cfk/laurent.hpp"
#include "cfk/order.hpp"
#include "cfk/verify.hpp"

namespace cfk::cli {

namespace {

using ojson = nlohmann::ordered_json;

void error_record(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    ojson rec;
    rec["error"] = kind;
    rec["message"] = message;
    rec["exit_code"] = code;
    err << rec.dump() << "\n";
}

class Output {
public:
    explicit Output(std::ostream& out) : out_(out) {}

    // "-" means the command's standard output.
    void write(const std::string& path, const std::string& text) const {
        if (path == "-")
            out_ << text;
        else
            write_text_file(path, text);
    }

private:
    std::ostream& out_;
};

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

ojson aseq_json(const ASequence& a) {
    ojson j;
    j["terms"] = a.terms;
    j["tail"] = to_string(a.tail);
    if (a.prime1 != 0) j["prime1"] = a.prime1;
    if (a.prime2 != 0) j["prime2"] = a.prime2;
    j["flattened"] = a.flattened();
    j["text"] = a.to_string();
    j["from_dual"] = a.from_dual;
    j["max_len"] = a.max_len;
    j["max_val"] = a.max_val;
    if (!a.note.empty()) j["note"] = a.note;
    return j;
}

ojson validation_json(const ValidationReport& r) {
    ojson j;
    j["valid"] = r.ok();
    ojson vs = ojson::array();
    for (const auto& v : r.violations) vs.push_back({{"code", v.code}, {"detail", v.detail}});
    j["violations"] = std::move(vs);
    j["notes"] = r.notes;
    j["column_homology_dim"] = r.column_homology_dim;
    j["collapse_homology_dim"] = r.collapse_homology_dim;
    return j;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw PreconditionError("'" + text + "' is not a comma-separated list of integers");
        }
    }
    return out;
}

RenderWindow parse_window(const std::string& text) {
    const auto v = parse_int_list(text);
    if (v.size() != 4) throw PreconditionError("--window needs imin,imax,jmin,jmax");
    return {v[0], v[1], v[2], v[3]};
}

struct Options {
    std::string out = "-";
    std::string file_a, file_b;
    std::string steps;
    int p = 0, q = 0, n = 0, k = 2;
    bool allow_non_palindromic = false;
    int max_len = 12;
    std::string max_val = "auto";
    bool skip_aseq = false;
    int max_n = 8;
    std::string window;
    int suite_k = 2;
    std::string format = "json";
    bool timing = false;
    int threads = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knot Floer complex calculator: validation, invariants, ordering and checks", "cfk"};
    app.require_subcommand(1);
    Options o;
    std::function<void()> action;
    const Output sink(out);

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output path, - for standard output"); };

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check every structural rule of a complex file");
    validate_cmd->add_option("file", o.file_a)->required();
    validate_cmd->callback([&] {
        action = [&] {
            const Complex c = load_complex(o.file_a);
            const auto r = validate(c);
            out << dump(validation_json(r));
            if (!r.ok()) throw InvalidComplex(r.summary());
        };
    });

    // build
    auto* build = app.add_subcommand("build", "Write a catalog complex");
    build->require_subcommand(1);
    auto* b_stair = build->add_subcommand("staircase", "Staircase from its step lengths");
    b_stair->add_option("--steps", o.steps, "Comma-separated steps, e.g. 1,2,2,1")->required();
    b_stair->add_flag("--allow-non-palindromic", o.allow_non_palindromic);
    add_out(b_stair);
    b_stair->callback([&] {
        action = [&] { sink.write(o.out, serialize(staircase(parse_int_list(o.steps), o.allow_non_palindromic))); };
    });
    auto* b_torus = build->add_subcommand("torus", "Staircase of the torus knot T(p,q)");
    b_torus->add_option("--p", o.p)->required();
    b_torus->add_option("--q", o.q)->required();
    add_out(b_torus);
    b_torus->callback([&] { action = [&] { sink.write(o.out, serialize(torus_complex(o.p, o.q))); }; });
    auto* b_cable = build->add_subcommand("cable-trefoil", "Staircase of the (n,n+1) cable of the trefoil");
    b_cable->add_option("--n", o.n)->required();
    add_out(b_cable);
    b_cable->callback([&] { action = [&] { sink.write(o.out, serialize(trefoil_cable_complex(o.n))); }; });
    auto* b_kn = build->add_subcommand("kn", "Model of K_n with the Whitehead double replaced by the trefoil");
    b_kn->add_option("--n", o.n)->required();
    add_out(b_kn);
    b_kn->callback([&] { action = [&] { sink.write(o.out, serialize(kn_model(o.n))); }; });
    auto* b_unknot = build->add_subcommand("unknot", "One generator at the origin");
    add_out(b_unknot);
    b_unknot->callback([&] { action = [&] { sink.write(o.out, serialize(unknot_complex())); }; });
    auto* b_fig2 = build->add_subcommand("figure2", "Nine-generator complex with epsilon 0");
    add_out(b_fig2);
    b_fig2->callback([&] { action = [&] { sink.write(o.out, serialize(figure2_fixture())); }; });

    // op
    auto* op = app.add_subcommand("op", "Algebraic operations on complex files");
    op->require_subcommand(1);
    auto binary_op = [&](const char* name, const char* help, Complex (*f)(const Complex&, const Complex&)) {
        auto* sub = op->add_subcommand(name, help);
        sub->add_option("a", o.file_a)->required();
        sub->add_option("b", o.file_b)->required();
        add_out(sub);
        sub->callback([&, f] {
            action = [&, f] { sink.write(o.out, serialize(f(load_complex(o.file_a), load_complex(o.file_b)))); };
        });
    };
    auto unary_op = [&](const char* name, const char* help, Complex (*f)(const Complex&)) {
        auto* sub = op->add_subcommand(name, help);
        sub->add_option("a", o.file_a)->required();
        add_out(sub);
        sub->callback([&, f] { action = [&, f] { sink.write(o.out, serialize(f(load_complex(o.file_a)))); }; });
    };
    binary_op("tensor", "Tensor product (connected sum)", &tensor);
    binary_op("difference", "a tensor dual(b)", &difference);
    unary_op("dual", "Dual complex (mirror)", &dual);
    unary_op("reduce", "Cancel filtration-preserving arrows", &reduce);
    auto* op_mult = op->add_subcommand("multiple", "Reduced k-fold tensor power");
    op_mult->add_option("a", o.file_a)->required();
    op_mult->add_option("--k", o.k, "Multiplier, k >= 1")->required();
    add_out(op_mult);
    op_mult->callback([&] { action = [&] { sink.write(o.out, serialize(multiple(load_complex(o.file_a), o.k))); }; });

    // invariants
    auto* inv = app.add_subcommand("invariants", "tau, epsilon and the a-sequence");
    inv->add_option("file", o.file_a)->required();
    inv->add_option("--max-len", o.max_len, "Most a-terms to compute");
    inv->add_option("--max-val", o.max_val, "Largest term value searched, or auto");
    inv->add_flag("--skip-aseq", o.skip_aseq, "Only report tau and epsilon");
    inv->callback([&] {
        action = [&] {
            const Complex c = load_complex(o.file_a);
            int max_val = 0;
            if (o.max_val != "auto") {
                const auto v = parse_int_list(o.max_val);
                if (v.size() != 1 || v[0] < 1) throw PreconditionError("--max-val needs a positive integer or auto");
                max_val = v[0];
            }
            ojson j;
            j["name"] = c.name();
            const int e = epsilon(c);
            j["tau"] = tau(c);
            j["epsilon"] = e;
            if (!o.skip_aseq) {
                if (e == 0) throw UndefinedInvariant("the a-sequence needs epsilon = +-1; '" + c.name() + "' has epsilon 0");
                const auto r = invariants(c, o.max_len, max_val);
                const auto& a = *r.aseq;
                j["a_sequence"] = a.flattened();
                j["tail"] = to_string(a.tail);
                j["detail"] = aseq_json(a);
            }
            out << dump(j);
        };
    });

    // compare
    auto* cmp = app.add_subcommand("compare", "Sign of epsilon(a tensor dual(b))");
    cmp->add_option("a", o.file_a)->required();
    cmp->add_option("b", o.file_b)->required();
    cmp->callback([&] {
        action = [&] {
            const auto r = compare(load_complex(o.file_a), load_complex(o.file_b));
            ojson j;
            j["value"] = r.value;
            j["compressed"] = r.compressed;
            out << dump(j);
        };
    });

    // order
    auto* order = app.add_subcommand("order", "Archimedean questions");
    order->require_subcommand(1);
    auto* arch = order->add_subcommand("arch", "Search N with N|a| > |b| and N|b| > |a|");
    arch->add_option("a", o.file_a)->required();
    arch->add_option("b", o.file_b)->required();
    arch->add_option("--max-n", o.max_n);
    arch->callback([&] {
        action = [&] {
            const auto w = arch_equivalent(load_complex(o.file_a), load_complex(o.file_b), o.max_n);
            ojson j;
            j["outcome"] = w.outcome == ArchWitness::Outcome::Witness ? "witness" : "unknown";
            if (w.outcome == ArchWitness::Outcome::Witness)
                j["n"] = w.n;
            else
                j["searched_up_to"] = w.searched_up_to;
            out << dump(j);
        };
    });
    auto* dom = order->add_subcommand("dominates", "Check |big| > N|small| for N up to --max-n");
    dom->add_option("small", o.file_a)->required();
    dom->add_option("big", o.file_b)->required();
    dom->add_option("--max-n", o.max_n)->default_val(6);
    dom->callback([&] {
        action = [&] {
            const auto d = dominance_consistent(load_complex(o.file_a), load_complex(o.file_b), o.max_n);
            ojson j;
            j["consistent"] = !d.refuted_at.has_value();
            j["refuted_at"] = d.refuted_at ? ojson(*d.refuted_at) : ojson(nullptr);
            j["consistent_up_to"] = d.consistent_up_to;
            out << dump(j);
        };
    });

    // alexander
    auto* alex = app.add_subcommand("alexander", "Alexander polynomials of L-space knots");
    alex->require_subcommand(1);
    auto emit_poly = [&](const LaurentPoly& p) {
        ojson j;
        j["polynomial"] = p.to_string();
        j["exponents"] = alternating_exponents(p);
        j["steps"] = staircase_steps_from_alexander(p);
        out << dump(j);
    };
    auto* a_torus = alex->add_subcommand("torus", "Torus knot T(p,q)");
    a_torus->add_option("--p", o.p)->required();
    a_torus->add_option("--q", o.q)->required();
    a_torus->callback([&] { action = [&] { emit_poly(torus_alexander(o.p, o.q)); }; });
    auto* a_cable = alex->add_subcommand("cable", "(n,n+1) cable of the right-handed trefoil");
    a_cable->add_option("--n", o.n)->required();
    a_cable->callback([&] {
        action = [&] {
            if (o.n < 2) throw PreconditionError("cable needs n >= 2");
            emit_poly(cable_alexander(torus_alexander(2, 3), o.n, o.n + 1));
        };
    });

    // render
    auto* render = app.add_subcommand("render", "SVG drawing of the (i,j) plane");
    render->add_option("file", o.file_a)->required();
    render->add_option("--out", o.out, "Output path, - for standard output")->required();
    render->add_option("--window", o.window, "imin,imax,jmin,jmax; one copy per generator when absent");
    render->callback([&] {
        action = [&] {
            const Complex c = load_complex(o.file_a);
            std::optional<RenderWindow> w;
            if (!o.window.empty()) w = parse_window(o.window);
            sink.write(o.out, render_svg(c, w));
        };
    });

    // suite
    auto* suite = app.add_subcommand("suite", "Run a verification suite and report every check");
    suite->require_subcommand(1);
    auto add_suite = [&](const char* name, const char* help, std::function<SuiteReport(const SuiteOptions&)> run) {
        auto* sub = suite->add_subcommand(name, help);
        sub->add_option("--n", o.n, "Staircase parameter n >= 2")->default_val(2);
        sub->add_option("--k", o.suite_k, "Largest pattern multiple in the corpus")->default_val(1);
        sub->add_option("--max-n", o.max_n, "Largest multiple in order checks")->default_val(4);
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--threads", o.threads, "Worker threads; default CFK_THREADS or the core count");
        sub->add_flag("--timing", o.timing, "Include runtimes (output is then not byte-stable)");
        add_out(sub);
        sub->callback([&, run] {
            action = [&, run] {
                SuiteOptions so;
                so.threads = o.threads > 0 ? o.threads : default_thread_count();
                const auto rep = run(so);
                sink.write(o.out, o.format == "json" ? rep.to_json(o.timing) : rep.to_text(o.timing));
                if (!rep.ok())
                    throw InvariantContradiction(std::to_string(rep.count(CheckStatus::Fail)) + " checks failed");
            };
        });
    };
    auto corpus = [&] {
        std::vector<int> mrange;
        for (int m = 2; m <= o.n + 1; ++m) mrange.push_back(m);
        return corpus_generate(o.n, o.suite_k, mrange).items;
    };
    add_suite("section2", "epsilon calculus over the corpus",
              [&](const SuiteOptions& so) { return check_epsilon_calculus(corpus(), so); });
    add_suite("section3", "a-sequence constraints over the corpus",
              [&](const SuiteOptions& so) { return check_section3(corpus(), so); });
    add_suite("section4", "forms-lemma instance checks over the corpus",
              [&](const SuiteOptions& so) { return check_section4_corpus(corpus(), o.n, o.max_n, so); });
    add_suite("order", "order coherence over the corpus",
              [&](const SuiteOptions& so) { return check_order_coherence(corpus(), o.n, so); });
    add_suite("main", "K_n chain for n = 2..--n", [&](const SuiteOptions& so) {
        std::vector<int> nrange;
        for (int m = 2; m <= std::max(2, o.n); ++m) nrange.push_back(m);
        return check_main_theorem(nrange, o.max_n, so);
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        error_record(err, "UsageError", e.what(), 1);
        return 1;
    }

    try {
        if (action) action();
    } catch (const Error& e) {
        error_record(err, e.kind(), e.what(), e.exit_code());
        return e.exit_code();
    } catch (const std::bad_alloc&) {
        error_record(err, "ResourceExhausted", "out of memory", 1);
        return 1;
    }
    return 0;
}

}  // namespace cfk::cli
