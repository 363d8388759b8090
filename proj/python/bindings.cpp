#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "betaforge/paper_checks.hpp"
#include "betaforge/serialize.hpp"
#include "betaforge/treepair.hpp"

namespace py = pybind11;
using namespace betaforge;

namespace {

// Contexts are immutable; python-side handles use a non-const holder.
using PyContextPtr = std::shared_ptr<BetaContext>;

PyContextPtr unconst(const ContextPtr& p) { return std::const_pointer_cast<BetaContext>(p); }

// Arbitrary-precision values cross the boundary as python ints / strings.
py::object to_py_int(const BigInt& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

BigInt to_bigint(const py::handle& obj) {
    return parse_integer(py::str(obj).cast<std::string>());
}

std::vector<BigInt> to_bigint_vector(const py::sequence& seq) {
    std::vector<BigInt> out;
    out.reserve(py::len(seq));
    for (const auto& item : seq)
        out.push_back(to_bigint(item));
    return out;
}

py::list from_coeff_vector(const CoeffVector& v) {
    py::list out;
    for (const auto& e : v)
        out.append(to_py_int(e));
    return out;
}

FieldElem elem_from_arg(const ContextPtr& ctx, const py::handle& obj) {
    if (py::isinstance<FieldElem>(obj))
        return obj.cast<FieldElem>();
    return FieldElem::rational(ctx, parse_rational(py::str(obj).cast<std::string>()));
}

py::dict report_to_dict(const MembershipReport& rep) {
    py::dict d;
    d["verdict"] = rep.verdict;
    d["slopes_ok"] = rep.slopes_ok;
    d["breakpoints_ok"] = rep.breakpoints_ok;
    py::list slopes;
    for (const auto& s : rep.slopes) {
        py::dict e;
        e["slope"] = s.slope;
        e["ok"] = s.ok;
        e["exponent"] = s.exponent ? py::cast(*s.exponent) : py::none();
        slopes.append(e);
    }
    d["slopes"] = slopes;
    py::list points;
    for (const auto& b : rep.breakpoints) {
        py::dict e;
        e["point"] = b.point;
        e["ok"] = b.ok;
        points.append(e);
    }
    d["breakpoints"] = points;
    d["first_offending_breakpoint"] =
        rep.first_offending_breakpoint ? py::cast(*rep.first_offending_breakpoint) : py::none();
    return d;
}

} // namespace

PYBIND11_MODULE(_betaforge, m) {
    m.doc() = "exact arithmetic for algebraic Bieri-Strebel groups";

    py::register_exception<error>(m, "BetaforgeError");

    py::class_<BetaContext, PyContextPtr>(m, "Context")
        .def_static(
            "create",
            [](const py::sequence& coeffs) { return unconst(BetaContext::create(to_bigint_vector(coeffs))); },
            py::arg("coeffs"),
            "Validate coefficients a_1..a_n of sum a_i x^i - 1 and build a context")
        .def_property_readonly("degree", &BetaContext::degree)
        .def_property_readonly("polynomial", [](const BetaContext& c) {
            return c.subdivision().to_string();
        })
        .def_property_readonly("coeffs", [](const BetaContext& c) {
            py::list out;
            for (const auto& a : c.subdivision().coeffs())
                out.append(to_py_int(a));
            return out;
        })
        .def_property_readonly("reciprocal_relation", [](const BetaContext& c) {
            py::list out;
            for (const auto& a : c.reciprocal_relation())
                out.append(to_py_int(a));
            return out;
        })
        .def("root_interval", [](const BetaContext& c, const std::string& width) {
            RootInterval iv = c.refine(c.root_interval(), parse_rational(width));
            return py::make_tuple(format_rational(iv.lo), format_rational(iv.hi));
        }, py::arg("width") = "1/100000000")
        .def("beta", [](const py::object& self) {
            return FieldElem::beta(ContextPtr(self.cast<PyContextPtr>()));
        })
        .def("rational", [](const py::object& self, const std::string& q) {
            return FieldElem::rational(ContextPtr(self.cast<PyContextPtr>()), parse_rational(q));
        })
        .def("element", [](const py::object& self, const py::sequence& coeffs) {
            ContextPtr ctx = ContextPtr(self.cast<PyContextPtr>());
            std::vector<BigRational> c;
            for (const auto& item : coeffs)
                c.push_back(parse_rational(py::str(item).cast<std::string>()));
            c.resize(ctx->degree(), BigRational(0));
            return FieldElem(ctx, std::move(c));
        }, "Element from ascending power-basis rational coefficients")
        .def("caret_shapes", [](const BetaContext& c, size_t cap) {
            py::list out;
            for (const auto& s : enumerate_carets(c, cap))
                out.append(s.legs);
            return out;
        }, py::arg("cap") = kDefaultCaretCap)
        .def_property_readonly("caret_count", [](const BetaContext& c) {
            return to_py_int(caret_count(c.subdivision()));
        })
        .def("__repr__", [](const BetaContext& c) {
            return "<Context " + c.subdivision().to_string() + ">";
        });

    py::class_<FieldElem>(m, "FieldElem")
        .def_property_readonly("coeffs", [](const FieldElem& x) {
            py::list out;
            for (const auto& c : x.coeffs())
                out.append(format_rational(c));
            return out;
        })
        .def_property_readonly("context", [](const FieldElem& x) { return unconst(x.ctx()); })
        .def("sign", &FieldElem::sign)
        .def("approx", [](const FieldElem& x, const std::string& width) {
            RootInterval iv = x.approx(parse_rational(width));
            return py::make_tuple(format_rational(iv.lo), format_rational(iv.hi));
        }, py::arg("width") = "1/1000000000000")
        .def("__float__", &FieldElem::to_double)
        .def("__add__", [](const FieldElem& a, const py::handle& b) {
            return a + elem_from_arg(a.ctx(), b);
        })
        .def("__sub__", [](const FieldElem& a, const py::handle& b) {
            return a - elem_from_arg(a.ctx(), b);
        })
        .def("__mul__", [](const FieldElem& a, const py::handle& b) {
            return a * elem_from_arg(a.ctx(), b);
        })
        .def("__truediv__", [](const FieldElem& a, const py::handle& b) {
            return a / elem_from_arg(a.ctx(), b);
        })
        .def("__neg__", [](const FieldElem& a) { return -a; })
        .def("__pow__", &FieldElem::pow)
        .def("__eq__", [](const FieldElem& a, const FieldElem& b) { return a == b; })
        .def("__lt__", [](const FieldElem& a, const FieldElem& b) { return a < b; })
        .def("__le__", [](const FieldElem& a, const FieldElem& b) { return a <= b; })
        .def("__repr__", [](const FieldElem& x) { return "<" + x.to_string() + ">"; })
        .def("__str__", &FieldElem::to_string);

    // subdivision-level queries
    m.def("quadratic_tree_pair_defined", [](const py::handle& a, const py::handle& b) {
        return quadratic_tree_pair_defined(to_bigint(a), to_bigint(b));
    });
    m.def("exponent_gcd", [](const py::sequence& coeffs) {
        ExponentGcd eg = exponent_gcd(SubdivisionPolynomial(to_bigint_vector(coeffs)));
        py::list base;
        for (const auto& c : eg.base.coeffs())
            base.append(to_py_int(c));
        return py::make_tuple(eg.k, base);
    });
    m.def("rational_root", [](const py::sequence& coeffs) -> py::object {
        auto r = rational_root(SubdivisionPolynomial(to_bigint_vector(coeffs)));
        return r ? py::cast(format_rational(*r)) : py::none();
    });
    auto exclusion_to_dict = [](const ExclusionReport& rep) {
        py::dict d;
        d["excluded"] = rep.excluded;
        d["steps"] = rep.steps;
        d["conclusion"] = rep.conclusion;
        return d;
    };
    m.def("sqrt_membership_quadratic",
          [exclusion_to_dict](const py::handle& a, const py::handle& b) {
              return exclusion_to_dict(sqrt_membership_quadratic(to_bigint(a), to_bigint(b)));
          });
    m.def("even_root_exclusion",
          [exclusion_to_dict](const py::handle& a, const py::handle& b, unsigned n) {
              return exclusion_to_dict(even_root_exclusion(to_bigint(a), to_bigint(b), n));
          });

    // representability
    m.def("build_matrix", [](const PyContextPtr& ctx) {
        SubstitutionMatrix A = build_matrix(ctx);
        py::list rows;
        for (size_t i = 0; i < A.dim(); ++i) {
            py::list row;
            for (size_t j = 0; j < A.dim(); ++j)
                row.append(to_py_int(A.at(i, j)));
            rows.append(row);
        }
        return rows;
    });
    m.def("apply_matrix", [](const PyContextPtr& ctx, const py::sequence& vec) {
        return from_coeff_vector(betaforge::apply(build_matrix(ctx), to_bigint_vector(vec)));
    });
    m.def("matrix_power", [](const PyContextPtr& ctx, unsigned long n) {
        IntMatrix p = matrix_power(build_matrix(ctx), n);
        py::list rows;
        for (size_t i = 0; i < p.dim(); ++i) {
            py::list row;
            for (size_t j = 0; j < p.dim(); ++j)
                row.append(to_py_int(p.at(i, j)));
            rows.append(row);
        }
        return rows;
    });
    m.def("boolean_cycle", [](const PyContextPtr& ctx, size_t max_n) {
        CycleInfo info = boolean_cycle(build_matrix(ctx), max_n);
        return py::make_tuple(info.start, info.period);
    }, py::arg("ctx"), py::arg("max_n") = 64);
    m.def("decide_nonneg", [](const PyContextPtr& ctx, const py::sequence& vec, unsigned long max_n) {
        CoeffVector p = to_bigint_vector(vec);
        Certificate cert = decide_nonneg(ctx, p, max_n);
        return py::module_::import("json").attr("loads")(
            certificate_to_json(ctx, p, cert).dump());
    }, py::arg("ctx"), py::arg("vec"), py::arg("max_n") = kDefaultMaxIterations);
    m.def("verify_certificate", [](const py::handle& cert) {
        json j = json::parse(py::str(py::module_::import("json").attr("dumps")(cert))
                                 .cast<std::string>());
        CertificateBundle b = certificate_from_json(j);
        return verify_certificate(b.ctx, b.vector, b.cert);
    });

    // PL maps
    py::enum_<MembershipTarget>(m, "MembershipTarget")
        .value("own_group", MembershipTarget::own_group)
        .value("square_root_base", MembershipTarget::square_root_base);

    py::class_<PLMap>(m, "PLMap")
        .def_property_readonly("context", [](const PLMap& f) { return unconst(f.ctx()); })
        .def_property_readonly("vertices", [](const PLMap& f) {
            py::list out;
            for (const auto& [x, y] : f.vertices())
                out.append(py::make_tuple(x, y));
            return out;
        })
        .def_property_readonly("slopes", &PLMap::slopes)
        .def("eval", [](const PLMap& f, const py::handle& t) {
            return f.eval(elem_from_arg(f.ctx(), t));
        })
        .def("inverse", &PLMap::inverse)
        .def("compose", [](const PLMap& f, const PLMap& g) { return compose(f, g); },
             "Left-to-right composition: (f.compose(g))(t) = g(f(t))")
        .def("validate_membership", [](const PLMap& f, MembershipTarget target, long window) {
            return report_to_dict(validate_membership(f, target, window));
        }, py::arg("target") = MembershipTarget::own_group,
           py::arg("window") = kDefaultExponentWindow)
        .def("to_json", [](const PLMap& f) { return plmap_to_json(f).dump(); })
        .def_static("from_json", [](const std::string& text) {
            return plmap_from_json(json::parse(text));
        })
        .def("__eq__", [](const PLMap& a, const PLMap& b) { return a == b; })
        .def("__repr__", [](const PLMap& f) {
            return "<PLMap with " + std::to_string(f.segment_count()) + " segments>";
        });

    m.def("identity_map", [](const PyContextPtr& ctx) { return PLMap::identity(ctx); });
    m.def("map_from_breakpoints",
          [](const PyContextPtr& ctx, const py::sequence& domain, const py::sequence& codomain) {
              std::vector<FieldElem> d, c;
              for (const auto& p : domain)
                  d.push_back(elem_from_arg(ctx, p));
              for (const auto& p : codomain)
                  c.push_back(elem_from_arg(ctx, p));
              return PLMap::from_partition_pair({Partition(ctx, d), Partition(ctx, c)});
          },
          "The PL map sending the i-th domain cell linearly onto the i-th codomain cell");
    m.def("tau_context", [] { return unconst(tau_context()); });
    m.def("ftau_generator", [](const std::string& kind, unsigned index) {
        if (kind != "x" && kind != "y")
            throw error("generator kind must be 'x' or 'y'");
        return ftau_generator(kind == "x" ? GeneratorKind::x : GeneratorKind::y, index);
    });
    m.def("counterexample_map", [](const py::handle& a, const py::handle& b) {
        return counterexample_map(to_bigint(a), to_bigint(b));
    });
    m.def("counterexample_map_arranged",
          [](const py::handle& a, const py::handle& b, std::vector<int> domain,
             std::vector<int> codomain) {
              return counterexample_map(to_bigint(a), to_bigint(b),
                                        CellArrangement{std::move(domain), std::move(codomain)});
          });

    // tree pairs
    py::class_<TreePair>(m, "TreePair")
        .def_property_readonly("context", [](const TreePair& tp) { return unconst(tp.ctx); })
        .def_property_readonly("left_depths", [](const TreePair& tp) {
            return leaf_depths(tp.left);
        })
        .def_property_readonly("right_depths", [](const TreePair& tp) {
            return leaf_depths(tp.right);
        })
        .def("to_plmap", &treepair_to_plmap)
        .def("reduce", [](const TreePair& tp) { return reduce(tp); })
        .def("compose", [](const TreePair& a, const TreePair& b, size_t budget) {
            return compose_pairs(a, b, budget);
        }, py::arg("other"), py::arg("budget") = kDefaultRefinementBudget)
        .def("equivalent", [](const TreePair& a, const TreePair& b) { return equivalent(a, b); })
        .def("power_up", [](const TreePair& tp, unsigned k) { return power_map_up(tp, k); })
        .def("power_down", [](const TreePair& tp, unsigned k) { return power_map_down(tp, k); })
        .def("to_json", [](const TreePair& tp) { return treepair_to_json(tp).dump(); })
        .def("to_dot", &treepair_to_dot)
        .def_static("from_json", [](const std::string& text) {
            return treepair_from_json(json::parse(text));
        })
        .def("__repr__", [](const TreePair& tp) {
            return "<TreePair with " + std::to_string(tp.leaf_count()) + " leaves>";
        });

    m.def("treepair_from_preorder",
          [](const PyContextPtr& ctx, const py::sequence& left, const py::sequence& right) {
              auto to_preorder = [](const py::sequence& seq) {
                  json arr = json::array();
                  for (const auto& e : seq)
                      arr.push_back(py::str(e).cast<std::string>());
                  return arr;
              };
              return TreePair(ctx, tree_from_json(to_preorder(left), *ctx),
                              tree_from_json(to_preorder(right), *ctx));
          },
          "Trees as preorder lists: caret shape index or -1 for a leaf");

    // presentations
    m.def("emit_presentation",
          [](const py::handle& a, const py::handle& b, unsigned max_index) {
              std::vector<std::string> out;
              for (const auto& r : emit_presentation(to_bigint(a), to_bigint(b), max_index))
                  out.push_back(r.to_string());
              return out;
          });
    m.def("check_ftau_relations", [](unsigned max_i) {
        RelationReport rep = check_ftau_relations(max_i);
        py::dict d;
        py::list checks;
        for (const auto& c : rep.checks) {
            py::dict e;
            e["relation"] = c.rel.to_string();
            e["left_to_right"] = c.holds_left_to_right;
            e["right_to_left"] = c.holds_right_to_left;
            checks.append(e);
        }
        d["checks"] = checks;
        d["consistent_order"] =
            rep.consistent_order
                ? py::cast(*rep.consistent_order == ComposeOrder::left_to_right
                               ? "left_to_right"
                               : "right_to_left")
                : py::none();
        return d;
    });

    // verification battery
    m.def("run_paper_checks", [](unsigned long max_n) {
        paper::CheckOptions opts;
        opts.max_n = max_n;
        py::list out;
        for (const auto& r : paper::run_paper_checks(opts)) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, py::arg("max_n") = kDefaultMaxIterations);
}
