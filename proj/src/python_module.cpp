#include "magnetic/cli.hpp"
#include "magnetic/elliptic.hpp"
#include "magnetic/errors.hpp"
#include "magnetic/json_io.hpp"
#include "magnetic/lift.hpp"
#include "magnetic/vvmf.hpp"
#include "magnetic/weil.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace magnetic;

namespace {

py::object to_python(const Json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

IntVector int_vector(const std::vector<py::int_>& v)
{
    IntVector out;
    for (const auto& x : v)
        out.emplace_back(py::str(x).cast<std::string>());
    return out;
}

RatVector rat_vector(const std::vector<std::string>& v)
{
    RatVector out;
    for (const auto& x : v)
        out.push_back(parse_rational(x));
    return out;
}

EvenLattice lattice_from_gram(const std::vector<std::vector<py::int_>>& gram, const std::string& name)
{
    if (gram.empty())
        throw InputError("empty Gram matrix");
    IntMatrix m(gram.size(), gram[0].size());
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (gram[i].size() != gram[0].size())
            throw InputError("Gram matrix rows have different lengths");
        IntVector row = int_vector(gram[i]);
        for (std::size_t j = 0; j < row.size(); ++j)
            m(i, j) = row[j];
    }
    return EvenLattice(std::move(m), name);
}

struct Form {
    std::shared_ptr<const VVModularForm> f;
};

Form make_form(VVModularForm f) { return Form{std::make_shared<const VVModularForm>(std::move(f))}; }

struct Lift {
    std::shared_ptr<const LiftProblem> p;
};

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact arithmetic for vector valued modular forms, their additive lifts and the elliptic examples.";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> precision_error;
    precision_error.call_once_and_store_result(
        [&]() { return py::exception<PrecisionError>(m, "PrecisionError", PyExc_ValueError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const PrecisionError& e) {
            std::string msg = std::string(e.what()) + " (required precision: " + e.required + ")";
            PyErr_SetString(precision_error.get_stored().ptr(), msg.c_str());
        } catch (const InputError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const InternalError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        }
    });

    py::class_<EvenLattice>(m, "Lattice")
        .def(py::init(&lattice_from_gram), py::arg("gram"), py::arg("name") = "")
        .def_static(
            "builtin", [](const std::string& spec) { return builtin_lattice(spec); }, py::arg("spec"),
            "Sums of U, A1, A2, D4, E8 with scalings, e.g. \"U+U+E8(-1)\".")
        .def_property_readonly("name", &EvenLattice::name)
        .def_property_readonly("rank", &EvenLattice::rank)
        .def_property_readonly("signature",
                               [](const EvenLattice& l) { return std::make_pair(l.b_plus(), l.b_minus()); })
        .def_property_readonly("level", &EvenLattice::level)
        .def_property_readonly("determinant", [](const EvenLattice& l) { return py::int_(py::str(l.determinant().get_str())); })
        .def_property_readonly("discriminant_order",
                               [](const EvenLattice& l) { return l.discriminant().order(); })
        .def_property_readonly("hash", [](const EvenLattice& l) { return lattice_hash(l); })
        .def("to_dict", [](const EvenLattice& l) { return to_python(lattice_to_json(l)); })
        .def("milgram_holds",
             [](const EvenLattice& l) {
                 const DiscriminantGroup& d = l.discriminant();
                 Cyclotomic sum;
                 for (std::size_t i = 0; i < d.order(); ++i)
                     sum += Cyclotomic::e(d.q_value(i));
                 return sum == cyclotomic_sqrt(static_cast<long>(d.order())) *
                                   Cyclotomic::e(Rational(l.b_plus() - l.b_minus(), 8));
             })
        .def("__repr__", [](const EvenLattice& l) {
            std::ostringstream s;
            s << "Lattice(" << (l.name().empty() ? lattice_hash(l) : l.name()) << ", rank " << l.rank()
              << ", signature (" << l.b_plus() << ", " << l.b_minus() << "))";
            return s.str();
        });

    m.def(
        "weil_representation",
        [](const EvenLattice& l, bool dual) {
            WeilRep w(l);
            if (dual)
                w = w.dual();
            return to_python(Json{{"dimension", w.dimension()},
                                  {"cyclo_order", w.cyclo_order()},
                                  {"rho_T", to_json(w.rho_t())},
                                  {"rho_S", to_json(w.rho_s())}});
        },
        py::arg("lattice"), py::arg("dual") = false,
        "Exact rho(S) and rho(T); entries are {order, coeffs} in the power basis of Q(zeta_order).");

    m.def(
        "weil_relations_hold",
        [](const EvenLattice& l) {
            WeilRep w(l);
            const CycloMatrix& s = w.rho_s();
            const CycloMatrix& t = w.rho_t();
            CycloMatrix id = identity_matrix(w.dimension());
            CycloMatrix s8 = id, st3 = id;
            for (int i = 0; i < 8; ++i)
                s8 = s8 * s;
            for (int i = 0; i < 3; ++i)
                st3 = st3 * (s * t);
            return s8 == id && st3 == s * s && s * conjugate_transpose(s) == id && t * conjugate_transpose(t) == id;
        },
        py::arg("lattice"));

    m.def(
        "classical_series",
        [](const std::string& expr, long prec) {
            long weight = 0;
            FourierSeries f = evaluate_classical_expression(expr, prec, &weight);
            std::map<long, std::string> coeffs;
            for (const auto& [n, c] : f.terms())
                coeffs[n] = to_string(c);
            return std::make_pair(weight, coeffs);
        },
        py::arg("expr"), py::arg("prec"),
        "Weight and coefficients {n: \"p/q\"} of an expression in E4, E6, Delta, j below q^prec.");

    py::class_<Form>(m, "Form")
        .def_static(
            "from_scalar",
            [](const EvenLattice& l, const std::string& expr, long prec, int bol_k) {
                long weight = 0;
                FourierSeries g = evaluate_classical_expression(expr, prec, &weight);
                VVModularForm f = from_scalar(g, std::make_shared<const WeilRep>(l), weight);
                if (bol_k)
                    f = bol(f, bol_k);
                return make_form(std::move(f));
            },
            py::arg("lattice"), py::arg("expr"), py::arg("prec"), py::arg("bol") = 0)
        .def_static(
            "from_json",
            [](const std::string& text, const EvenLattice& l) {
                Json j = Json::parse(text);
                auto rep = std::make_shared<const WeilRep>(l);
                if (j.value("dual", false))
                    rep = std::make_shared<const WeilRep>(rep->dual());
                return make_form(form_from_json(j, rep));
            },
            py::arg("text"), py::arg("lattice"))
        .def("to_json", [](const Form& f) { return form_to_json(*f.f).dump(); })
        .def_property_readonly("weight", [](const Form& f) { return to_string(f.f->weight()); })
        .def_property_readonly("prec", [](const Form& f) { return to_string(f.f->prec()); })
        .def(
            "coefficient",
            [](const Form& f, std::size_t coset, const std::string& exponent) {
                return to_string(f.f->coefficient(coset, parse_rational(exponent)));
            },
            py::arg("coset"), py::arg("exponent"))
        .def(
            "check_divisibility",
            [](const Form& f, long level, int s) { return to_python(report_to_json(check_input_divisibility(*f.f, level, s))); },
            py::arg("level"), py::arg("s"));

    py::class_<Lift>(m, "Lift")
        .def(py::init([](const EvenLattice& l, const Form& f, std::optional<std::vector<py::int_>> e,
                         std::optional<std::vector<std::string>> eprime) {
                 IntVector ev(l.rank(), Integer(0));
                 RatVector epv(l.rank(), Rational(0));
                 if (e.has_value() != eprime.has_value())
                     throw InputError("give e and eprime together");
                 if (e) {
                     ev = int_vector(*e);
                     epv = rat_vector(*eprime);
                 } else {
                     if (l.rank() < 2)
                         throw InputError("lattice too small for a default cusp");
                     ev[0] = 1;
                     epv[1] = 1;
                 }
                 return Lift{std::make_shared<const LiftProblem>(l, cusp_data(l, ev, epv), *f.f)};
             }),
             py::arg("lattice"), py::arg("form"), py::arg("e") = py::none(), py::arg("eprime") = py::none(),
             "Without e and eprime the cusp is the hyperbolic plane in the first two coordinates.")
        .def_property_readonly("kappa", [](const Lift& x) { return x.p->kappa(); })
        .def_property_readonly("cusp", [](const Lift& x) { return to_python(cusp_to_json(x.p->cusp())); })
        .def("constant_term", [](const Lift& x) { return to_python(to_json(constant_term(*x.p))); })
        .def(
            "coefficient",
            [](const Lift& x, const std::vector<py::int_>& u) { return to_python(to_json(coefficient(*x.p, int_vector(u)))); },
            py::arg("u"), "u in the basis of K' dual to the K basis.")
        .def(
            "expand",
            [](const Lift& x, const std::string& height, std::optional<std::vector<std::string>> w0) {
                RatVector w = w0 ? rat_vector(*w0) : default_interior_vector(x.p->cusp());
                LiftExpansion ex;
                {
                    py::gil_scoped_release release;
                    ex = expand(*x.p, w, parse_rational(height));
                }
                return to_python(expansion_to_json(ex, x.p->cusp()));
            },
            py::arg("height"), py::arg("w0") = py::none())
        .def(
            "check_magnetic",
            [](const Lift& x, const std::vector<py::int_>& lambda0, long lmax, int s, std::optional<bool> trivial) {
                return to_python(report_to_json(check_magnetic(*x.p, int_vector(lambda0), lmax, s, trivial)));
            },
            py::arg("lambda0"), py::arg("lmax"), py::arg("s"), py::arg("cusp_space_trivial") = py::none());

    m.def(
        "check_classical",
        [](const std::string& name, long prec) {
            return to_python(report_to_json(check_classical_magnetic(parse_classical_magnetic(name), prec)));
        },
        py::arg("name"), py::arg("prec"));
    m.def(
        "j_report", [](long bound) { return to_python(report_to_json(j_divisibility_report(bound))); },
        py::arg("bound"));
    m.def(
        "fkdd",
        [](int k, long d, long D, long nmax, unsigned bits, long amax, int digits) {
            PrecisionScope scope(bits);
            return to_python(fkdd_to_json(fkdd_coefficients(k, d, D, nmax, bits, amax), digits));
        },
        py::arg("k"), py::arg("d"), py::arg("D"), py::arg("nmax") = 10, py::arg("bits") = 256,
        py::arg("amax") = 200, py::arg("digits") = 30);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line tool in process; returns (exit code, stdout, stderr).");
}
