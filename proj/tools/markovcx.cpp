#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "mcx/bases.hpp"
#include "mcx/bouquet.hpp"
#include "mcx/complexity.hpp"
#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"
#include "mcx/lawrence.hpp"
#include "mcx/matrix.hpp"

using json = nlohmann::ordered_json;
using namespace mcx;

namespace {

struct global_options {
    std::string input_path;
    bool json_out = false;
    unsigned jobs = 1;  // results are identical for any worker count
    std::size_t fiber_cap = bases::limits{}.fiber_cap;
    std::size_t graver_cap = bases::limits{}.graver_cap;
    std::uint64_t seed = 0;  // reserved for randomized self-checks

    bases::limits limits() const { return {fiber_cap, graver_cap}; }
};

int_matrix load_matrix(const global_options& opt) {
    if (opt.input_path.empty() || opt.input_path == "-")
        return parse_matrix(std::cin);
    std::ifstream in(opt.input_path);
    if (!in)
        throw std::invalid_argument("cannot open input file " + opt.input_path);
    return parse_matrix(in);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json vec_to_json(const ivec& v) {
    json arr = json::array();
    for (const auto& x : v)
        arr.push_back(x.str());
    return arr;
}

json matrix_to_json(const int_matrix& a) {
    json rows = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i)
        rows.push_back(vec_to_json(a.row(i)));
    return rows;
}

json basis_to_json(const bases::basis_set& b) {
    json out;
    out["kind"] = bases::basis_kind_name(b.kind);
    out["matrix_digest"] = matrix_digest(b.matrix);
    json elems = json::array();
    for (const auto& v : b.elements)
        elems.push_back(vec_to_json(v));
    out["elements"] = elems;
    return out;
}

void emit_matrix(const global_options& opt, const int_matrix& a,
                 const std::vector<std::string>& comments = {}) {
    if (opt.json_out) {
        json out;
        out["rows"] = a.rows();
        out["cols"] = a.cols();
        out["entries"] = matrix_to_json(a);
        std::cout << out.dump() << '\n';
        return;
    }
    for (const auto& c : comments)
        std::cout << "# " << c << '\n';
    std::cout << format_matrix(a);
}

void cmd_kernel(const global_options& opt) {
    auto a = load_matrix(opt);
    auto k = intlin::kernel_basis(a);
    if (opt.json_out) {
        json out;
        out["matrix_digest"] = matrix_digest(a);
        out["ambient_dim"] = k.ambient_dim;
        out["dim"] = k.dim();
        json rows = json::array();
        for (const auto& r : k.rows)
            rows.push_back(vec_to_json(r));
        out["basis"] = rows;
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << "# kernel basis (row HNF) of " << matrix_digest(a) << '\n';
    if (k.dim() == 0) {
        std::cout << "# kernel is trivial\n";
        return;
    }
    std::cout << format_matrix(intlin::basis_matrix(k));
}

void cmd_gale(const global_options& opt) {
    auto a = load_matrix(opt);
    auto g = intlin::gale_transforms(a);
    if (opt.json_out) {
        json out;
        out["matrix_digest"] = matrix_digest(a);
        json vecs = json::array();
        json free_cols = json::array();
        for (std::size_t i = 0; i < g.size(); ++i) {
            vecs.push_back(vec_to_json(g[i]));
            if (vec_is_zero(g[i]))
                free_cols.push_back(i + 1);
        }
        out["gale"] = vecs;
        out["free_columns"] = free_cols;
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << "# gale transforms of " << matrix_digest(a)
              << " (basis-convention dependent)\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::cout << "a" << i + 1 << ": " << format_ivec_csv(g[i]);
        if (vec_is_zero(g[i]))
            std::cout << " free";
        std::cout << '\n';
    }
}

void cmd_bouquet(const global_options& opt) {
    auto a = load_matrix(opt);
    auto dec = bouquet::bouquets(a);
    if (opt.json_out) {
        json out;
        out["matrix_digest"] = matrix_digest(a);
        json list = json::array();
        for (std::size_t k = 0; k < dec.q(); ++k) {
            json b;
            b["free"] = static_cast<bool>(dec.free_flags[k]);
            json cols = json::array();
            for (std::size_t c : dec.bouquets[k])
                cols.push_back(c + 1);
            b["cols"] = cols;
            b["cB"] = vec_to_json(dec.cb[k]);
            list.push_back(b);
        }
        out["bouquets"] = list;
        out["AB"] = matrix_to_json(dec.ab);
        std::cout << out.dump() << '\n';
        return;
    }
    for (std::size_t k = 0; k < dec.q(); ++k) {
        std::cout << "B" << k + 1 << ' ' << (dec.free_flags[k] ? "free" : "nonfree")
                  << " cols=";
        for (std::size_t i = 0; i < dec.bouquets[k].size(); ++i)
            std::cout << (i ? "," : "") << dec.bouquets[k][i] + 1;
        std::cout << " cB=" << format_ivec_csv(dec.cb[k]) << '\n';
    }
    std::cout << "# bouquet matrix AB\n" << format_matrix(dec.ab);
}

void cmd_lift(const global_options& opt, std::size_t r) {
    emit_matrix(opt, lawrence::lawrence_lift(load_matrix(opt), r));
}

std::vector<lawrence::bouquet_spec> parse_specs(const std::string& text, bool solve) {
    std::vector<lawrence::bouquet_spec> specs;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        lawrence::bouquet_spec sp;
        bool have_lambda = false;
        std::istringstream parts(line);
        std::string part;
        while (std::getline(parts, part, ';')) {
            auto eq = part.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("specs file: expected 'key = values' in '" + part + "'");
            std::string key = part.substr(0, eq);
            key.erase(0, key.find_first_not_of(" \t"));
            key.erase(key.find_last_not_of(" \t") + 1);
            ivec vals = parse_ivec_csv(part.substr(eq + 1));
            if (key == "cprime")
                sp.cprime = std::move(vals);
            else if (key == "lambda") {
                sp.lambda = std::move(vals);
                have_lambda = true;
            } else
                throw std::invalid_argument("specs file: unknown key '" + key + "'");
        }
        if (sp.cprime.empty())
            throw std::invalid_argument("specs file: line without cprime");
        if (!have_lambda) {
            if (!solve)
                throw std::invalid_argument(
                    "specs file: missing lambda (use --solve-lambda to fill it in)");
            sp.lambda = lawrence::solve_lambda(sp.cprime);
        }
        specs.push_back(std::move(sp));
    }
    return specs;
}

void cmd_gen_lawrence(const global_options& opt, const std::string& base_path,
                      const std::string& specs_path, bool solve) {
    std::ifstream base_in(base_path);
    if (!base_in)
        throw std::invalid_argument("cannot open base file " + base_path);
    int_matrix base = parse_matrix(base_in);
    auto specs = parse_specs(read_file(specs_path), solve);
    int_matrix l = lawrence::generalized_lawrence(base, specs);
    std::vector<std::string> comments;
    for (std::size_t i = 0; i < specs.size(); ++i)
        comments.push_back("bouquet " + std::to_string(i + 1) + ": cprime=" +
                           format_ivec_csv(specs[i].cprime) + " lambda=" +
                           format_ivec_csv(specs[i].lambda));
    emit_matrix(opt, l, comments);
}

void cmd_witness(const global_options& opt, long long s, bool verify) {
    auto w = lawrence::witness_matrix(s);
    std::optional<bool> indisp;
    if (verify) {
        auto lift = lawrence::lawrence_lift(lawrence::family_as(s), static_cast<std::size_t>(s));
        indisp = bases::is_indispensable(lift, lawrence::flat_from_tableau(w), opt.limits());
    }
    if (opt.json_out) {
        json out;
        out["s"] = s;
        out["tableau"] = lawrence::format_tableau(w);
        out["type"] = lawrence::tableau_type(w);
        if (indisp) {
            out["indispensable"] = *indisp;
            if (*indisp)
                out["lower_bound"] = s;
        }
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << lawrence::format_tableau(w) << '\n';
    if (indisp) {
        std::cout << "indispensable: " << (*indisp ? "true" : "false") << '\n';
        if (*indisp)
            std::cout << "lower_bound: " << s << '\n';
    }
}

void cmd_fiber(const global_options& opt, const std::string& elem,
               const std::string& degree) {
    auto a = load_matrix(opt);
    if (elem.empty() == degree.empty())
        throw std::invalid_argument("fiber: need exactly one of -u or --degree");
    bases::fiber f = elem.empty()
                         ? bases::fiber_by_degree(a, parse_ivec_csv(degree), opt.limits())
                         : bases::fiber_of(a, parse_ivec_csv(elem), opt.limits());
    if (opt.json_out) {
        json out;
        out["matrix_digest"] = matrix_digest(a);
        out["degree"] = vec_to_json(f.degree);
        json mem = json::array();
        for (const auto& t : f.members)
            mem.push_back(vec_to_json(t));
        out["members"] = mem;
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << "# fiber of degree " << format_ivec_csv(f.degree) << " over "
              << matrix_digest(a) << ": " << f.members.size() << " members\n";
    for (const auto& t : f.members)
        std::cout << format_ivec_csv(t) << '\n';
}

void cmd_graver(const global_options& opt, bool oracle, const std::string& cap) {
    auto a = load_matrix(opt);
    bases::basis_set b;
    if (oracle) {
        if (cap.empty())
            throw std::invalid_argument("graver --oracle requires --cap");
        b = bases::graver_bruteforce(a, bigint(cap));
    } else {
        b = bases::graver(a, opt.limits());
    }
    if (opt.json_out)
        std::cout << basis_to_json(b).dump() << '\n';
    else
        std::cout << bases::format_basis(b);
}

void cmd_markov(const global_options& opt, const std::string& verify_path) {
    auto a = load_matrix(opt);
    if (!verify_path.empty()) {
        std::ifstream in(verify_path);
        if (!in)
            throw std::invalid_argument("cannot open basis file " + verify_path);
        auto s = bases::parse_basis(in, a);
        bool ok = bases::is_markov_basis(a, s, opt.limits());
        if (opt.json_out) {
            json out;
            out["matrix_digest"] = matrix_digest(a);
            out["markov_basis"] = ok;
            std::cout << out.dump() << '\n';
        } else {
            std::cout << "markov_basis: " << (ok ? "true" : "false") << '\n';
        }
        return;
    }
    auto b = bases::minimal_markov(a, opt.limits());
    if (opt.json_out) {
        json out = basis_to_json(b);
        out["witness"] = vec_to_json(*intlin::positive_grading_witness_int(a));
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << "# witness: " << format_ivec_csv(*intlin::positive_grading_witness_int(a))
              << '\n'
              << bases::format_basis(b);
}

void cmd_indispensable(const global_options& opt, const std::string& elem) {
    auto a = load_matrix(opt);
    if (!elem.empty()) {
        bool ok = bases::is_indispensable(a, parse_ivec_csv(elem), opt.limits());
        if (opt.json_out) {
            json out;
            out["matrix_digest"] = matrix_digest(a);
            out["indispensable"] = ok;
            std::cout << out.dump() << '\n';
        } else {
            std::cout << "indispensable: " << (ok ? "true" : "false") << '\n';
        }
        return;
    }
    auto b = bases::indispensable_set(a, opt.limits());
    if (opt.json_out)
        std::cout << basis_to_json(b).dump() << '\n';
    else
        std::cout << bases::format_basis(b);
}

void cmd_complexity(const global_options& opt, std::size_t r_max, bool with_graver,
                    const std::string& witness_literal) {
    auto a = load_matrix(opt);
    if (!witness_literal.empty()) {
        auto t = lawrence::parse_tableau(witness_literal);
        auto lift = lawrence::lawrence_lift(a, t.r);
        bool indisp =
            bases::is_indispensable(lift, lawrence::flat_from_tableau(t), opt.limits());
        std::size_t ty = lawrence::tableau_type(t);
        if (opt.json_out) {
            json out;
            out["matrix_digest"] = matrix_digest(a);
            out["witness"] = {{"r", t.r}, {"type", ty}, {"indispensable", indisp}};
            if (indisp)
                out["lower_bound"] = ty;
            std::cout << out.dump() << '\n';
        } else {
            std::cout << "witness_type: " << ty << '\n'
                      << "indispensable: " << (indisp ? "true" : "false") << '\n';
            if (indisp)
                std::cout << "lower_bound: " << ty << '\n';
        }
        return;
    }
    auto rep = complexity::markov_complexity_upto(a, r_max, opt.limits(), with_graver);
    if (opt.json_out) {
        std::cout << complexity::report_to_json(rep) << '\n';
        return;
    }
    std::cout << "# complexity report for " << rep.matrix_digest << '\n';
    for (std::size_t i = 0; i < rep.r_values.size(); ++i) {
        std::cout << "r=" << rep.r_values[i]
                  << ": markov_max_type=" << rep.markov_max_type[i];
        if (rep.graver_max_type)
            std::cout << " graver_max_type=" << (*rep.graver_max_type)[i];
        std::cout << '\n';
    }
    std::cout << "lower_bound: " << rep.running_max << '\n'
              << "upper_bound_closed_form: " << rep.bound_closed_form.str() << '\n'
              << "tree_depth_transpose: forest=" << rep.td_forest
              << " single_tree=" << rep.td_single_tree << '\n';
}

void cmd_treedepth(const global_options& opt, const std::string& convention,
                   bool transpose) {
    auto a = load_matrix(opt);
    auto g = complexity::matrix_graph(transpose ? a.transposed() : a);
    auto conv = convention == "single-tree" ? complexity::td_convention::single_tree
                                            : complexity::td_convention::forest;
    std::size_t td = complexity::tree_depth(g, conv);
    if (opt.json_out) {
        json out;
        out["matrix_digest"] = matrix_digest(a);
        out["convention"] = convention;
        out["transpose"] = transpose;
        out["tree_depth"] = td;
        std::cout << out.dump() << '\n';
    } else {
        std::cout << "tree_depth: " << td << '\n';
    }
}

void cmd_bound(const global_options& opt) {
    auto a = load_matrix(opt);
    auto pruned = complexity::remove_redundant_rows(a);
    bigint amax = pruned.max_abs_entry();
    std::size_t n = pruned.cols();
    auto gt = complexity::matrix_graph(pruned.transposed());
    std::size_t t = complexity::tree_depth(gt, complexity::td_convention::forest);
    bigint norm_bound = complexity::graver_norm_bound(amax, std::max<std::size_t>(t, 1));
    bigint comp_bound = complexity::complexity_bound_sharp(amax, n);
    if (opt.json_out) {
        json out;
        out["matrix_digest"] = matrix_digest(a);
        out["a"] = amax.str();
        out["n"] = n;
        out["tree_depth_transpose_forest"] = t;
        out["graver_norm_bound"] = norm_bound.str();
        out["complexity_bound"] = comp_bound.str();
        std::cout << out.dump() << '\n';
        return;
    }
    std::cout << "a: " << amax.str() << '\n'
              << "n: " << n << '\n'
              << "tree_depth_transpose_forest: " << t << '\n'
              << "graver_norm_bound: " << norm_bound.str() << '\n'
              << "complexity_bound: " << comp_bound.str() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    global_options opt;
    CLI::App app{"exact toolkit for Markov and Graver complexity of integer matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("-i,--input", opt.input_path, "input matrix file ('-' for stdin)");
    app.add_flag("--json", opt.json_out, "structured output");
    app.add_option("--jobs", opt.jobs, "worker count (results identical for any value)")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--fiber-cap", opt.fiber_cap, "max members per enumerated fiber");
    app.add_option("--graver-cap", opt.graver_cap, "max elements during completion");
    app.add_option("--seed", opt.seed, "seed for randomized self-checks");

    auto* kernel = app.add_subcommand("kernel", "canonical kernel basis");
    kernel->callback([&] { cmd_kernel(opt); });

    auto* gale = app.add_subcommand("gale", "Gale transforms of the columns");
    gale->callback([&] { cmd_gale(opt); });

    auto* bq = app.add_subcommand("bouquet", "bouquet decomposition and bouquet matrix");
    bq->callback([&] { cmd_bouquet(opt); });

    std::size_t lift_r = 0;
    auto* lift = app.add_subcommand("lift", "r-th Lawrence lifting");
    lift->add_option("-r", lift_r, "lifting order")->required();
    lift->callback([&] { cmd_lift(opt, lift_r); });

    std::string base_path, specs_path;
    bool solve_lambda = false;
    auto* gen = app.add_subcommand("gen-lawrence", "generalized Lawrence matrix");
    gen->add_option("--base", base_path, "base matrix file")->required();
    gen->add_option("--specs", specs_path, "bouquet specs file")->required();
    gen->add_flag("--solve-lambda", solve_lambda, "fill in missing lambda via extended Euclid");
    gen->callback([&] { cmd_gen_lawrence(opt, base_path, specs_path, solve_lambda); });

    long long fam_s = 0;
    auto* fam = app.add_subcommand("family-as", "the 2x4 family matrix");
    fam->add_option("-s", fam_s, "family parameter (>= 3)")->required();
    fam->callback([&] { emit_matrix(opt, lawrence::family_as(fam_s)); });

    long long kt_s = 0;
    std::size_t kt_k = 0;
    auto* kt = app.add_subcommand("family-kt", "the 1x(4+k) family matrix");
    kt->add_option("-s", kt_s, "family parameter (>= 3)")->required();
    kt->add_option("-k", kt_k, "number of trailing ones")->required();
    kt->callback([&] { emit_matrix(opt, lawrence::family_kt(kt_s, kt_k)); });

    long long wit_s = 0;
    bool wit_verify = false;
    auto* wit = app.add_subcommand("witness", "type-s witness tableau");
    wit->add_option("-s", wit_s, "family parameter (>= 3)")->required();
    wit->add_flag("--verify", wit_verify, "verify indispensability in the s-th lifting");
    wit->callback([&] { cmd_witness(opt, wit_s, wit_verify); });

    std::string fib_u, fib_degree;
    auto* fib = app.add_subcommand("fiber", "enumerate a fiber");
    fib->add_option("-u", fib_u, "kernel element (comma separated)");
    fib->add_option("--degree", fib_degree, "degree vector (comma separated)");
    fib->callback([&] { cmd_fiber(opt, fib_u, fib_degree); });

    bool gr_oracle = false;
    std::string gr_cap;
    auto* gr = app.add_subcommand("graver", "Graver basis");
    gr->add_flag("--oracle", gr_oracle, "brute-force enumeration instead of completion");
    gr->add_option("--cap", gr_cap, "1-norm cap for --oracle");
    gr->callback([&] { cmd_graver(opt, gr_oracle, gr_cap); });

    std::string mk_verify;
    auto* mk = app.add_subcommand("markov", "minimal Markov basis");
    mk->add_option("--verify-against", mk_verify, "check a basis file instead");
    mk->callback([&] { cmd_markov(opt, mk_verify); });

    std::string ind_elem;
    auto* ind = app.add_subcommand("indispensable", "indispensable kernel elements");
    ind->add_option("--element", ind_elem, "test a single element");
    ind->callback([&] { cmd_indispensable(opt, ind_elem); });

    std::size_t cx_rmax = 0;
    bool cx_graver = false;
    std::string cx_witness;
    auto* cx = app.add_subcommand("complexity", "complexity report over liftings");
    cx->add_option("--max-r", cx_rmax, "largest lifting order");
    cx->add_flag("--graver", cx_graver, "also record Graver max types");
    cx->add_option("--witness", cx_witness, "tableau literal: indispensability shortcut");
    cx->callback([&] {
        if (cx_witness.empty() && cx_rmax < 2)
            throw CLI::ValidationError("complexity", "--max-r must be >= 2");
        cmd_complexity(opt, cx_rmax, cx_graver, cx_witness);
    });

    std::string td_conv = "forest";
    bool td_transpose = false;
    auto* td = app.add_subcommand("treedepth", "tree-depth of the matrix graph");
    td->add_option("--convention", td_conv, "forest | single-tree")
        ->check(CLI::IsMember({"forest", "single-tree"}));
    td->add_flag("--transpose", td_transpose, "use the transpose graph");
    td->callback([&] { cmd_treedepth(opt, td_conv, td_transpose); });

    auto* bd = app.add_subcommand("bound", "norm and complexity bounds");
    bd->callback([&] { cmd_bound(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const unsupported_input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const resource_limit_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
