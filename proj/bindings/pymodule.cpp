#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "mcx/bases.hpp"
#include "mcx/bouquet.hpp"
#include "mcx/complexity.hpp"
#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"
#include "mcx/lawrence.hpp"
#include "mcx/matrix.hpp"

namespace py = pybind11;

// exact conversion between python ints and arbitrary-precision entries,
// through the decimal representation
namespace pybind11::detail {

template <>
struct type_caster<mcx::bigint> {
public:
    PYBIND11_TYPE_CASTER(mcx::bigint, const_name("int"));

    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr()))
            return false;
        value = mcx::bigint(std::string(py::str(src)));
        return true;
    }

    static handle cast(const mcx::bigint& v, return_value_policy, handle) {
        return PyLong_FromString(v.str().c_str(), nullptr, 10);
    }
};

template <>
struct type_caster<mcx::bigrat> {
public:
    PYBIND11_TYPE_CASTER(mcx::bigrat, const_name("Fraction"));

    bool load(handle, bool) { return false; }  // input rationals not needed

    static handle cast(const mcx::bigrat& v, return_value_policy, handle) {
        py::object fraction = py::module_::import("fractions").attr("Fraction");
        py::object num = py::reinterpret_steal<py::object>(
            PyLong_FromString(numerator(v).str().c_str(), nullptr, 10));
        py::object den = py::reinterpret_steal<py::object>(
            PyLong_FromString(denominator(v).str().c_str(), nullptr, 10));
        return fraction(num, den).release();
    }
};

} // namespace pybind11::detail

namespace {

using rows_t = std::vector<std::vector<mcx::bigint>>;

mcx::int_matrix to_matrix(const rows_t& rows) {
    return mcx::int_matrix::from_rows(rows);
}

rows_t from_matrix(const mcx::int_matrix& a) {
    rows_t rows;
    for (std::size_t i = 0; i < a.rows(); ++i)
        rows.push_back(a.row(i));
    return rows;
}

rows_t tableau_rows(const mcx::lawrence::tableau& t) {
    return t.rows;
}

mcx::lawrence::tableau to_tableau(const rows_t& rows) {
    mcx::lawrence::tableau t;
    t.rows = rows;
    t.r = rows.size();
    t.n = rows.empty() ? 0 : rows.front().size();
    return t;
}

py::dict basis_to_dict(const mcx::bases::basis_set& b) {
    py::dict d;
    d["kind"] = mcx::bases::basis_kind_name(b.kind);
    d["elements"] = b.elements;
    return d;
}

} // namespace

PYBIND11_MODULE(markovcx, m) {
    m.doc() = "exact Markov/Graver complexity toolkit";

    py::register_exception<mcx::unsupported_input_error>(m, "UnsupportedInputError");
    py::register_exception<mcx::resource_limit_error>(m, "ResourceLimitError");

    // matrices cross the boundary as lists of rows of python ints
    m.def("parse_matrix", [](const std::string& text) {
        return from_matrix(mcx::parse_matrix(text));
    });
    m.def("format_matrix", [](const rows_t& rows) {
        return mcx::format_matrix(to_matrix(rows));
    });
    m.def("matrix_digest", [](const rows_t& rows) {
        return mcx::matrix_digest(to_matrix(rows));
    });

    m.def("hnf", [](const rows_t& rows) {
        auto r = mcx::intlin::hnf(to_matrix(rows));
        return py::make_tuple(from_matrix(r.h), from_matrix(r.u));
    });
    m.def("rank", [](const rows_t& rows) { return mcx::intlin::rank(to_matrix(rows)); });
    m.def("kernel_basis", [](const rows_t& rows) {
        return mcx::intlin::kernel_basis(to_matrix(rows)).rows;
    });
    m.def("gale_transforms", [](const rows_t& rows) {
        return mcx::intlin::gale_transforms(to_matrix(rows));
    });
    m.def("positive_grading_witness", [](const rows_t& rows) -> py::object {
        auto y = mcx::intlin::positive_grading_witness(to_matrix(rows));
        if (!y)
            return py::none();
        return py::cast(*y);
    });

    m.def("lawrence_lift", [](const rows_t& rows, std::size_t r) {
        return from_matrix(mcx::lawrence::lawrence_lift(to_matrix(rows), r));
    });
    m.def("tableau_type", [](const rows_t& rows) {
        return mcx::lawrence::tableau_type(to_tableau(rows));
    });
    m.def("family_as", [](long long s) { return from_matrix(mcx::lawrence::family_as(s)); });
    m.def("family_kt", [](long long s, std::size_t k) {
        return from_matrix(mcx::lawrence::family_kt(s, k));
    });
    m.def("witness_matrix", [](long long s) {
        return tableau_rows(mcx::lawrence::witness_matrix(s));
    });
    m.def("solve_lambda", &mcx::lawrence::solve_lambda);
    m.def("generalized_lawrence",
          [](const rows_t& base, const std::vector<std::pair<mcx::ivec, mcx::ivec>>& specs) {
              std::vector<mcx::lawrence::bouquet_spec> sp;
              for (const auto& [c, l] : specs)
                  sp.push_back({c, l});
              return from_matrix(mcx::lawrence::generalized_lawrence(to_matrix(base), sp));
          });
    m.def("zero_one_fixture", [] { return from_matrix(mcx::lawrence::zero_one_fixture()); });

    m.def("bouquets", [](const rows_t& rows) {
        auto dec = mcx::bouquet::bouquets(to_matrix(rows));
        py::dict d;
        py::list cols, free_flags;
        for (std::size_t k = 0; k < dec.q(); ++k) {
            py::list b;
            for (std::size_t i : dec.bouquets[k])
                b.append(i);
            cols.append(b);
            free_flags.append(static_cast<bool>(dec.free_flags[k]));
        }
        d["bouquets"] = cols;
        d["free"] = free_flags;
        d["cB"] = dec.cb;
        d["AB"] = from_matrix(dec.ab);
        return d;
    });
    m.def("map_D", [](const rows_t& rows, const mcx::ivec& u) {
        return mcx::bouquet::map_d(mcx::bouquet::bouquets(to_matrix(rows)), u);
    });
    m.def("map_T", [](const rows_t& rows, const mcx::ivec& v) {
        return mcx::bouquet::map_t(mcx::bouquet::bouquets(to_matrix(rows)), v);
    });
    m.def("lifted_bouquet_kernel_check", [](const rows_t& rows, std::size_t r) {
        return mcx::bouquet::lifted_bouquet_kernel_check(to_matrix(rows), r);
    });

    m.def("conformal_leq", &mcx::bases::conformal_leq);
    m.def("is_semiconformal_sum", &mcx::bases::is_semiconformal_sum);
    m.def("fiber_of", [](const rows_t& rows, const mcx::ivec& u) {
        return mcx::bases::fiber_of(to_matrix(rows), u).members;
    });
    m.def("fiber_by_degree", [](const rows_t& rows, const mcx::ivec& b) {
        return mcx::bases::fiber_by_degree(to_matrix(rows), b).members;
    });
    m.def("graver", [](const rows_t& rows) {
        return basis_to_dict(mcx::bases::graver(to_matrix(rows)));
    });
    m.def("graver_bruteforce", [](const rows_t& rows, const mcx::bigint& cap) {
        return basis_to_dict(mcx::bases::graver_bruteforce(to_matrix(rows), cap));
    });
    m.def("minimal_markov", [](const rows_t& rows) {
        return basis_to_dict(mcx::bases::minimal_markov(to_matrix(rows)));
    });
    m.def("is_markov_basis", [](const rows_t& rows, const std::vector<mcx::ivec>& elems) {
        auto a = to_matrix(rows);
        mcx::bases::basis_set s;
        s.matrix = a;
        s.kind = mcx::bases::basis_kind::markov;
        for (auto v : elems)
            s.elements.push_back(mcx::sign_normalized(std::move(v)));
        std::sort(s.elements.begin(), s.elements.end(), mcx::lex_less);
        s.elements.erase(std::unique(s.elements.begin(), s.elements.end()),
                         s.elements.end());
        return mcx::bases::is_markov_basis(a, s);
    });
    m.def("is_indispensable", [](const rows_t& rows, const mcx::ivec& u) {
        return mcx::bases::is_indispensable(to_matrix(rows), u);
    });
    m.def("indispensable_set", [](const rows_t& rows) {
        return basis_to_dict(mcx::bases::indispensable_set(to_matrix(rows)));
    });

    m.def("matrix_graph", [](const rows_t& rows) {
        auto g = mcx::complexity::matrix_graph(to_matrix(rows));
        std::vector<std::pair<std::size_t, std::size_t>> edges(g.edges.begin(),
                                                               g.edges.end());
        return py::make_tuple(g.vertex_count, edges);
    });
    m.def(
        "tree_depth",
        [](std::size_t vertices,
           const std::vector<std::pair<std::size_t, std::size_t>>& edges,
           const std::string& convention) {
            mcx::complexity::simple_graph g;
            g.vertex_count = vertices;
            for (auto [i, j] : edges)
                if (i != j)
                    g.edges.emplace(std::min(i, j), std::max(i, j));
            auto conv = convention == "single-tree"
                            ? mcx::complexity::td_convention::single_tree
                            : mcx::complexity::td_convention::forest;
            return mcx::complexity::tree_depth(g, conv);
        },
        py::arg("vertices"), py::arg("edges"), py::arg("convention") = "forest");
    m.def("graver_norm_bound", &mcx::complexity::graver_norm_bound);
    m.def("complexity_bound", &mcx::complexity::complexity_bound);
    m.def("complexity_bound_sharp", &mcx::complexity::complexity_bound_sharp);
    m.def(
        "markov_complexity_upto",
        [](const rows_t& rows, std::size_t r_max, bool with_graver) {
            auto rep = mcx::complexity::markov_complexity_upto(to_matrix(rows), r_max, {},
                                                               with_graver);
            py::dict d;
            d["matrix_digest"] = rep.matrix_digest;
            d["r"] = rep.r_values;
            d["markov_max_type"] = rep.markov_max_type;
            if (rep.graver_max_type)
                d["graver_max_type"] = *rep.graver_max_type;
            else
                d["graver_max_type"] = py::none();
            d["lower_bound"] = rep.running_max;
            d["upper_bound_closed_form"] = rep.bound_closed_form;
            d["tree_depth"] =
                py::dict(py::arg("forest") = rep.td_forest,
                         py::arg("single_tree") = rep.td_single_tree);
            return d;
        },
        py::arg("matrix"), py::arg("r_max"), py::arg("with_graver") = false);
    m.def("graver_complexity_upto", [](const rows_t& rows, std::size_t r_max) {
        return mcx::complexity::graver_complexity_upto(to_matrix(rows), r_max);
    });
}
