// Python bindings. Structured results that already have a JSON form cross
// the boundary as JSON text and are decoded on the Python side.

#include "towns/algebra.hpp"
#include "towns/bounds.hpp"
#include "towns/constructions.hpp"
#include "towns/search.hpp"
#include "towns/setcore.hpp"
#include "towns/table.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace towns;

namespace {

auto family_from(int n, int k, int a, int b, const std::vector<std::vector<int>>& sets) -> Family
{
    Family f(TownSpec::make(n, k, a, b));
    for (const auto& s : sets)
        f.add(SetWord::from_elements(n, s));
    return f;
}

auto family_sets(const Family& f) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> out;
    for (const auto& s : f.members())
        out.push_back(s.elements());
    return out;
}

auto spec_tuple(const Family& f) -> py::tuple
{
    const auto& s = f.spec();
    return py::make_tuple(s.n, s.k, s.a, s.b);
}

auto violations(const Family& f) -> py::list
{
    py::list out;
    for (const auto& v : check_town(f).violations) {
        py::dict d;
        d["kind"] = v.kind == Violation::Kind::set_size ? "set_size" : "pair_intersection";
        d["first"] = v.first;
        d["second"] = v.second;
        d["observed"] = v.observed;
        d["residue"] = v.residue;
        d["message"] = describe(v, f.spec());
        out.append(d);
    }
    return out;
}

auto search_options(std::uint64_t max_nodes, double max_time, unsigned threads, bool symmetry) -> SearchOptions
{
    SearchOptions opt;
    opt.budget.max_nodes = max_nodes;
    opt.budget.max_time = std::chrono::milliseconds(static_cast<long long>(max_time * 1000.0));
    opt.threads = threads == 0 ? 1 : threads;
    opt.symmetry = symmetry;
    return opt;
}

} // namespace

PYBIND11_MODULE(_towns, m)
{
    m.doc() = "Exact engine for (a,b)-town mod k families";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    py::class_<Family>(m, "Family")
        .def(py::init(&family_from), py::arg("n"), py::arg("k"), py::arg("a"), py::arg("b"), py::arg("sets"))
        .def_property_readonly("spec", &spec_tuple)
        .def_property_readonly("sets", &family_sets)
        .def("__len__", &Family::size)
        .def("__eq__", [](const Family& x, const Family& y) { return x == y; })
        .def("check", [](const Family& f) { return check_town(f).pass; })
        .def("violations", &violations)
        .def("substitute", [](const Family& f) { return substitute(f); })
        .def("render", [](const Family& f) { return render_family(f); })
        .def_static("parse", [](const std::string& text) { return parse_family(text); })
        .def("__repr__", [](const Family& f) {
            return "<Family " + to_string(f.spec()) + ", " + std::to_string(f.size()) + " sets>";
        });

    m.def("star", &star, py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n"));
    m.def("co_star", &co_star, py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n"));
    m.def("block_construction", &block_construction, py::arg("m"), py::arg("k"), py::arg("n"));
    m.def("frankl_odlyzko", &frankl_odlyzko, py::arg("k"), py::arg("n"));
    m.def("augment", &augment, py::arg("family"), py::arg("m"));
    m.def(
        "best_lower_bound",
        [](int a, int b, int k, int n) {
            auto r = best_lower_bound(a, b, k, n);
            return py::make_tuple(r.generator, r.size_expr.render(), r.family);
        },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n"));

    m.def(
        "_bound_oracle_json", [](int a, int b, int k, int n) { return to_json(bound_oracle(a, b, k, n)); },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n"));

    m.def(
        "_certify_json",
        [](const Family& f, int p) {
            bool same = residue(f.spec().a - f.spec().b, p) == 0;
            return to_json(same ? isotropy_certificate(f, p) : independence_certificate(f, p));
        },
        py::arg("family"), py::arg("p"));

    m.def(
        "extremal_search",
        [](int a, int b, int k, int n, std::uint64_t max_nodes, double max_time, unsigned threads, bool symmetry) {
            ExtremalResult r;
            {
                py::gil_scoped_release release;
                r = extremal_search(TownSpec::make(n, k, a, b), search_options(max_nodes, max_time, threads, symmetry));
            }
            py::dict d;
            d["size"] = r.size;
            d["status"] = to_string(r.status);
            d["tripped"] = to_string(r.tripped);
            d["nodes"] = r.nodes_explored;
            d["elapsed_ms"] = r.elapsed.count();
            d["witness"] = r.witness;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n"), py::arg("max_nodes") = SearchBudget{}.max_nodes,
        py::arg("max_time") = 300.0, py::arg("threads") = 1U, py::arg("symmetry") = true);

    m.def("naive_extremal", [](int a, int b, int k, int n) { return naive_extremal(TownSpec::make(n, k, a, b)); },
        py::arg("a"), py::arg("b"), py::arg("k"), py::arg("n"));

    m.def(
        "probe_conjectures",
        [](int k, int n_max) {
            ConjectureReport r;
            {
                py::gil_scoped_release release;
                r = probe_conjectures(k, n_max);
            }
            py::list findings;
            for (const auto& f : r.counterexamples) {
                py::dict d;
                d["conjecture"] = f.conjecture;
                d["detail"] = f.detail;
                d["witness"] = f.witness;
                findings.append(d);
            }
            py::dict d;
            d["cells_computed"] = r.cells_computed;
            d["cells_optimal"] = r.cells_optimal;
            d["monotone_checks"] = r.monotone_checks;
            d["linear_checks"] = r.linear_checks;
            d["counterexamples"] = findings;
            return d;
        },
        py::arg("k"), py::arg("n_max"));

    m.def(
        "_table_json", [](int k, int n) { return to_json(table_cells(k, n)); }, py::arg("k"), py::arg("n"));
    m.def(
        "table_markdown", [](int k, int n, bool evaluate) { return render_table_markdown(table_cells(k, n), evaluate); },
        py::arg("k"), py::arg("n"), py::arg("evaluate") = false);
}
