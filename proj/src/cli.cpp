#include "magnetic/cli.hpp"

#include "magnetic/elliptic.hpp"
#include "magnetic/errors.hpp"
#include "magnetic/json_io.hpp"
#include "magnetic/lift.hpp"
#include "magnetic/vvmf.hpp"
#include "magnetic/weil.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace magnetic::cli {

namespace {

struct Outcome {
    Json report;
    std::string table;
    int code = kExitOk;
};

struct Options {
    std::string out;
    std::string format = "json";

    std::string lattice;
    std::string form;
    bool dual = false;

    std::string expr;
    long prec = 0;
    int bol_k = 0;
    std::string tensor;
    std::string invariant;

    int s = 0;
    long level = 0;

    std::string height;
    std::string w0;
    std::string lambda0;
    long lmax = 30;
    std::string cusp_space_trivial;

    int k = 2;
    long d = 0;
    long D = 0;
    long nmax = 10;
    unsigned bits = 256;
    long amax = 200;
    int digits = 30;

    std::string name;
    long bound = 1000;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty())
            throw InputError("empty entry in list \"" + text + "\"");
        out.push_back(item);
    }
    if (out.empty())
        throw InputError("empty list");
    return out;
}

IntVector parse_int_list(const std::string& text)
{
    IntVector out;
    for (const auto& x : split_list(text)) {
        Rational r = parse_rational(x);
        if (!is_integer(r))
            throw InputError("expected integers in \"" + text + "\"");
        out.push_back(r.get_num());
    }
    return out;
}

RatVector parse_rat_list(const std::string& text)
{
    RatVector out;
    for (const auto& x : split_list(text))
        out.push_back(parse_rational(x));
    return out;
}

/// A lattice file, or a form file carrying its lattice under "lattice".
LatticeFile load_lattice(const std::string& path)
{
    Json j = read_json_file(path);
    if (j.is_object() && !j.contains("gram") && !j.contains("builtin") && j.contains("lattice"))
        j = j.at("lattice");
    try {
        return lattice_from_json(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// e, e' from the file, else the hyperbolic plane in the first two coordinates.
std::pair<IntVector, RatVector> cusp_vectors(const LatticeFile& f)
{
    if (f.e)
        return {*f.e, *f.eprime};
    const IntMatrix& g = f.lattice.gram();
    if (g.rows() >= 2 && g(0, 0) == 0 && g(1, 1) == 0 && g(0, 1) == 1) {
        IntVector e(g.rows(), Integer(0));
        RatVector ep(g.rows(), Rational(0));
        e[0] = 1;
        ep[1] = 1;
        return {e, ep};
    }
    throw InputError("lattice file needs \"e\" and \"eprime\" (no hyperbolic plane in the leading coordinates)");
}

std::shared_ptr<const WeilRep> rep_for(const EvenLattice& l, bool dual)
{
    auto rep = std::make_shared<const WeilRep>(l);
    if (dual)
        return std::make_shared<const WeilRep>(rep->dual());
    return rep;
}

VVModularForm load_form(const Json& j, const EvenLattice& l)
{
    return form_from_json(j, rep_for(l, j.is_object() && j.value("dual", false)));
}

std::string join(const IntVector& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + v[i].get_str();
    return s;
}

std::string join(const RatVector& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + to_string(v[i]);
    return s;
}

Json envelope(const std::string& command, Json parameters, Json result, const std::string& status)
{
    return Json{{"schema", kSchemaVersion},
                {"command", command},
                {"parameters", std::move(parameters)},
                {"result", std::move(result)},
                {"status", status}};
}

Outcome lattice_dump(const Options& o)
{
    LatticeFile f = load_lattice(o.lattice);
    Json result = lattice_to_json(f.lattice);
    std::ostringstream t;
    t << "lattice   " << f.lattice.name() << "\n"
      << "hash      " << lattice_hash(f.lattice) << "\n"
      << "rank      " << f.lattice.rank() << "\n"
      << "signature (" << f.lattice.b_plus() << ", " << f.lattice.b_minus() << ")\n"
      << "det       " << f.lattice.determinant() << "\n"
      << "level     " << f.lattice.level() << "\n"
      << "|L'/L|    " << f.lattice.discriminant().order() << "\n";
    if (f.e) {
        CuspData c = cusp_data(f.lattice, *f.e, *f.eprime);
        result["cusp"] = cusp_to_json(c);
        t << "N_e       " << c.n_e << "\n"
          << "zeta      " << join(c.zeta) << "\n";
    }
    const DiscriminantGroup& d = f.lattice.discriminant();
    t << "coset  q mod 1  representative\n";
    for (std::size_t g = 0; g < d.order() && g < 64; ++g)
        t << g << "  " << to_string(d.q_value(g)) << "  [" << join(d.representative(g)) << "]\n";
    if (d.order() > 64)
        t << "... " << d.order() - 64 << " more\n";
    Json params{{"lattice_file", o.lattice}, {"lattice_hash", lattice_hash(f.lattice)}};
    return {envelope("lattice dump", params, result, "ok"), t.str(), kExitOk};
}

Outcome weil_dump(const Options& o)
{
    LatticeFile f = load_lattice(o.lattice);
    auto rep = rep_for(f.lattice, o.dual);
    Json q = Json::array();
    for (std::size_t g = 0; g < rep->dimension(); ++g)
        q.push_back(to_json(rep->q_value(g)));
    Json result{{"dimension", rep->dimension()},
                {"cyclo_order", rep->cyclo_order()},
                {"dual", rep->is_dual()},
                {"q_values", q},
                {"rho_T", to_json(rep->rho_t())},
                {"rho_S", to_json(rep->rho_s())}};
    std::ostringstream t;
    t << "dimension " << rep->dimension() << ", entries in Q(zeta_" << rep->cyclo_order() << ")"
      << (rep->is_dual() ? ", dual" : "") << "\n";
    t << "rho(T) diagonal:\n";
    for (std::size_t g = 0; g < rep->dimension(); ++g)
        t << "  " << g << "  " << to_string(rep->rho_t()(g, g)) << "\n";
    if (rep->dimension() <= 8) {
        t << "rho(S):\n";
        for (std::size_t i = 0; i < rep->dimension(); ++i) {
            t << " ";
            for (std::size_t j = 0; j < rep->dimension(); ++j)
                t << "  " << to_string(rep->rho_s()(i, j));
            t << "\n";
        }
    }
    Json params{{"lattice_file", o.lattice}, {"lattice_hash", lattice_hash(f.lattice)}, {"dual", o.dual}};
    return {envelope("weil dump", params, result, "ok"), t.str(), kExitOk};
}

Outcome form_build(const Options& o)
{
    LatticeFile base = load_lattice(o.lattice);
    std::optional<LatticeFile> second;
    if (!o.tensor.empty()) {
        second = load_lattice(o.tensor);
        if (o.invariant.empty())
            throw InputError("--tensor needs --invariant");
    }
    if (o.prec <= 0)
        throw InputError("--prec must be positive");
    long weight = 0;
    FourierSeries g = evaluate_classical_expression(o.expr, o.prec, &weight);
    auto rep = std::make_shared<const WeilRep>(base.lattice);
    VVModularForm f = from_scalar(g, rep, Rational(weight));
    if (o.bol_k)
        f = bol(f, o.bol_k);
    if (second)
        f = tensor_with_invariant(parse_int_list(o.invariant), WeilRep(second->lattice), f);
    const EvenLattice& l = f.rep().lattice();
    Json result = form_to_json(f);
    result["lattice"] = Json{{"gram", to_json(l.gram())}, {"name", l.name()}};
    std::ostringstream t;
    t << "form of weight " << to_string(f.weight()) << " on " << l.name() << " (hash " << lattice_hash(l)
      << "), precision " << to_string(f.prec()) << "\n";
    for (const auto& [key, c] : f.principal_part())
        t << "  principal part: coset " << key.first << ", q^" << to_string(key.second) << " * " << to_string(c)
          << "\n";
    // A form file is written as is so that other subcommands can read it.
    result["parameters"] = Json{{"expr", o.expr},
                                {"prec", o.prec},
                                {"bol", o.bol_k},
                                {"tensor", o.tensor},
                                {"invariant", o.invariant},
                                {"lattice_file", o.lattice}};
    return {result, t.str(), kExitOk};
}

Outcome form_check_div(const Options& o)
{
    LatticeFile lf = load_lattice(o.lattice);
    Json fj = read_json_file(o.form);
    VVModularForm f = load_form(fj, lf.lattice);
    long level = o.level ? o.level : lf.lattice.level();
    DivisibilityReport r = check_input_divisibility(f, level, o.s);
    Json params{{"lattice_file", o.lattice},
                {"lattice_hash", lattice_hash(lf.lattice)},
                {"form_file", o.form},
                {"weight", to_json(f.weight())},
                {"prec", to_json(f.prec())},
                {"level", level},
                {"s", o.s}};
    std::ostringstream t;
    t << "(N l)^(s-1) | b(gamma, l) with N = " << level << ", s = " << o.s << "\n"
      << "checked " << r.entries.size() << ", passed " << r.passed << ", failed " << r.failed
      << ", indeterminate " << r.indeterminate << "\n";
    for (const auto& e : r.entries)
        if (e.verdict != Divisibility::yes)
            t << "  coset " << e.coset << "  l = " << to_string(e.exponent) << "  b = " << to_string(e.coefficient)
              << "  modulus " << to_string(e.modulus) << "  " << to_string(e.verdict) << "\n";
    bool ok = r.all_pass();
    return {envelope("form check-div", params, report_to_json(r), ok ? "pass" : "fail"), t.str(),
            ok ? kExitOk : kExitCheckFailed};
}

struct LiftInputs {
    LatticeFile lattice;
    Json form;
};

LiftProblem lift_problem(const LiftInputs& in)
{
    auto [e, ep] = cusp_vectors(in.lattice);
    CuspData cusp = cusp_data(in.lattice.lattice, e, ep);
    return LiftProblem(in.lattice.lattice, std::move(cusp), load_form(in.form, in.lattice.lattice));
}

Json lift_parameters(const Options& o, const LiftProblem& p)
{
    return Json{{"lattice_file", o.lattice},
                {"lattice_hash", lattice_hash(p.lattice())},
                {"form_file", o.form},
                {"weight", to_json(p.form().weight())},
                {"prec", to_json(p.form().prec())},
                {"kappa", p.kappa()},
                {"e", to_json(p.cusp().e)},
                {"eprime", to_json(p.cusp().eprime)}};
}

Outcome lift_expand(const Options& o)
{
    LiftInputs in{load_lattice(o.lattice), read_json_file(o.form)};
    LiftProblem p = lift_problem(in);
    Rational height = parse_rational(o.height);
    RatVector w0 = o.w0.empty() ? default_interior_vector(p.cusp()) : parse_rat_list(o.w0);
    LiftExpansion ex = expand(p, w0, height);
    Json result = expansion_to_json(ex, p.cusp());
    Json non_integral = Json::array();
    std::ostringstream t;
    t << "constant term " << to_string(ex.constant_term) << "\n"
      << "w0 = [" << join(ex.w0) << "], height " << to_string(ex.height) << ", " << ex.coefficients.size()
      << " coefficients\n";
    for (const auto& [u, v] : ex.coefficients) {
        bool zero = std::all_of(u.begin(), u.end(), [](const Integer& x) { return x == 0; });
        if (!zero && !v.is_integral())
            non_integral.push_back(to_json(u));
        if (!v.is_zero())
            t << "  [" << join(u) << "]  q = " << to_string(dual_norm(p.cusp(), u)) << "  " << to_string(v)
              << "\n";
    }
    result["non_integral"] = non_integral;
    Json params = lift_parameters(o, p);
    params["height"] = to_json(height);
    params["w0"] = to_json(w0);
    return {envelope("lift expand", params, result, "ok"), t.str(), kExitOk};
}

Outcome lift_check_magnetic(const Options& o)
{
    LiftInputs in{load_lattice(o.lattice), read_json_file(o.form)};
    std::optional<bool> trivial;
    if (o.cusp_space_trivial == "true")
        trivial = true;
    else if (o.cusp_space_trivial == "false")
        trivial = false;
    else if (!o.cusp_space_trivial.empty())
        throw InputError("--cusp-space-trivial takes true or false");
    LiftProblem p = lift_problem(in);
    IntVector lambda0 = parse_int_list(o.lambda0);
    MagnetReport r = check_magnetic(p, lambda0, o.lmax, o.s, trivial);
    Json params = lift_parameters(o, p);
    params["lambda0"] = to_json(lambda0);
    params["lmax"] = o.lmax;
    params["s"] = o.s;
    std::ostringstream t;
    t << "lambda0 = [" << join(lambda0) << "], q(lambda0) = " << to_string(r.q_lambda0) << ", N = " << r.level
      << ", s = " << r.s << "\n"
      << "input divisibility certified: " << (r.input_divisibility_certified ? "yes" : "no")
      << ", weight condition: " << (r.weight_condition ? "yes" : "no") << ", cusp forms trivial: "
      << (r.cusp_space_trivial ? (*r.cusp_space_trivial ? "yes" : "no") : "unasserted") << "\n";
    for (const auto& e : r.entries)
        t << "  l = " << e.l << "  a = " << to_string(e.value) << "  modulus " << e.modulus << "  "
          << to_string(e.verdict) << "\n";
    bool ok = r.all_pass();
    return {envelope("lift check-magnetic", params, report_to_json(r), ok ? "pass" : "fail"), t.str(),
            ok ? kExitOk : kExitCheckFailed};
}

Outcome elliptic_fkdd(const Options& o)
{
    FkdDCoefficients f = fkdd_coefficients(o.k, o.d, o.D, o.nmax, o.bits, o.amax);
    Json params{{"k", o.k}, {"d", o.d}, {"D", o.D}, {"nmax", o.nmax}, {"bits", o.bits}, {"amax", o.amax},
                {"digits", o.digits}};
    std::ostringstream t;
    t << "f_{" << o.k << "," << o.d << "," << o.D << "}: " << f.classes << " forms with a <= " << f.a_max
      << ", valid for Im z > " << to_decimal(f.pole_height, 10) << "\n";
    for (std::size_t m = 0; m < f.coefficients.size(); ++m)
        t << "  " << m + 1 << "  " << to_decimal(f.coefficients[m].re, o.digits) << "  "
          << to_decimal(f.coefficients[m].im, o.digits) << "  tail <= " << to_decimal(f.class_tail_bound[m], 3)
          << "\n";
    return {envelope("elliptic fkdd", params, fkdd_to_json(f, o.digits), "ok"), t.str(), kExitOk};
}

Outcome elliptic_check_classical(const Options& o)
{
    ClassicalMagnetic which = parse_classical_magnetic(o.name);
    ClassicalReport r = check_classical_magnetic(which, o.prec);
    Json params{{"name", std::string(to_string(which))}, {"prec", o.prec}};
    std::ostringstream t;
    t << to_string(which) << ": n^" << divisibility_exponent(which) << " | c(n) for 1 <= n < " << o.prec << ", "
      << r.failures << " failures\n";
    for (const auto& e : r.entries)
        if (!e.pass)
            t << "  n = " << e.n << "  c = " << e.coefficient << "  modulus " << e.modulus << "\n";
    bool ok = r.failures == 0;
    return {envelope("elliptic check-classical", params, report_to_json(r), ok ? "pass" : "fail"), t.str(),
            ok ? kExitOk : kExitCheckFailed};
}

Outcome elliptic_check_j(const Options& o)
{
    JReport r = j_divisibility_report(o.bound);
    Json params{{"bound", o.bound}};
    std::ostringstream t;
    t << "2^(3a+8) 3^(2b+5) 5^(c+1) 7^d | a_j(m), m <= " << o.bound << ": " << r.failures << " failures\n";
    for (const auto& e : r.entries)
        if (!e.pass)
            t << "  m = " << e.m << "  (a,b,c,d) = (" << e.a << "," << e.b << "," << e.c << "," << e.d
              << ")  modulus " << e.modulus << "\n";
    bool ok = r.failures == 0;
    return {envelope("elliptic check-j", params, report_to_json(r), ok ? "pass" : "fail"), t.str(),
            ok ? kExitOk : kExitCheckFailed};
}

void emit(const Outcome& oc, const Options& o, std::ostream& out)
{
    std::string text = o.format == "table" ? oc.table : oc.report.dump(2) + "\n";
    if (o.out.empty() || o.out == "-") {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw InputError("cannot write " + o.out);
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact checks for magnetic modular forms and their lifts", "magnetic"};
    app.set_config("--config", "", "TOML file with option values, one section per subcommand");
    app.add_option("--out", o.out, "Write the report here instead of stdout");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "table"}));
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);

    std::function<Outcome(const Options&)> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                    std::function<Outcome(const Options&)> fn) {
        CLI::App* sub = parent->add_subcommand(name, help);
        sub->configurable();
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    CLI::App* lattice = app.add_subcommand("lattice", "Lattices and discriminant forms")->require_subcommand(1);
    lattice->configurable();
    auto* ld = leaf(lattice, "dump", "Invariants, discriminant group and cusp data", lattice_dump);
    ld->add_option("--lattice", o.lattice, "Lattice file")->required();

    CLI::App* weil = app.add_subcommand("weil", "Weil representation")->require_subcommand(1);
    weil->configurable();
    auto* wd = leaf(weil, "dump", "Exact rho(S) and rho(T)", weil_dump);
    wd->add_option("--lattice", o.lattice, "Lattice file")->required();
    wd->add_flag("--dual", o.dual, "Use the dual representation");

    CLI::App* form = app.add_subcommand("form", "Vector valued forms")->require_subcommand(1);
    form->configurable();
    auto* fb = leaf(form, "build", "Build a form file from a scalar expression", form_build);
    fb->add_option("--lattice", o.lattice, "Unimodular lattice file")->required();
    fb->add_option("--expr", o.expr, "Expression in E4, E6, Delta, j")->required();
    fb->add_option("--prec", o.prec, "Number of coefficients of the scalar form")->required();
    fb->add_option("--bol", o.bol_k, "Apply D^(k-1)");
    fb->add_option("--tensor", o.tensor, "Second lattice file for the tensor construction");
    fb->add_option("--invariant", o.invariant, "Invariant vector, comma separated");
    auto* fc = leaf(form, "check-div", "Input divisibility (N l)^(s-1) | b(gamma, l)", form_check_div);
    fc->add_option("--lattice", o.lattice, "Lattice file")->required();
    fc->add_option("--form", o.form, "Form file")->required();
    fc->add_option("--s", o.s, "Exponent parameter s")->required();
    fc->add_option("--level", o.level, "Level N (default: level of the lattice)");

    CLI::App* lift = app.add_subcommand("lift", "Additive lift")->require_subcommand(1);
    lift->configurable();
    auto* le = leaf(lift, "expand", "Fourier expansion up to a height", lift_expand);
    le->add_option("--lattice", o.lattice, "Lattice file with e and eprime")->required();
    le->add_option("--form", o.form, "Form file")->required();
    le->add_option("--height", o.height, "Bound on (lambda, w0)")->required();
    le->add_option("--w0", o.w0, "Interior vector in K coordinates, comma separated");
    auto* lc = leaf(lift, "check-magnetic", "Divisibility of a(l lambda0)", lift_check_magnetic);
    lc->add_option("--lattice", o.lattice, "Lattice file with e and eprime")->required();
    lc->add_option("--form", o.form, "Form file")->required();
    lc->add_option("--lambda0", o.lambda0, "Primitive vector of K', comma separated")->required();
    lc->add_option("--lmax", o.lmax, "Largest multiple l");
    lc->add_option("--s", o.s, "Exponent parameter s")->required();
    lc->add_option("--cusp-space-trivial", o.cusp_space_trivial, "Assert (true) or deny (false)");

    CLI::App* ell = app.add_subcommand("elliptic", "Elliptic examples")->require_subcommand(1);
    ell->configurable();
    auto* ef = leaf(ell, "fkdd", "Fourier coefficients of f_{k,d,D}", elliptic_fkdd);
    ef->add_option("--k", o.k, "Weight")->required();
    ef->add_option("--d", o.d, "Discriminant d")->required();
    ef->add_option("--D", o.D, "Fundamental discriminant D")->required();
    ef->add_option("--nmax", o.nmax, "Number of coefficients");
    ef->add_option("--bits", o.bits, "Working precision in bits");
    ef->add_option("--amax", o.amax, "Largest leading coefficient a");
    ef->add_option("--digits", o.digits, "Decimal digits in the report");
    auto* ec = leaf(ell, "check-classical", "n^e | c(n) for a classical quotient", elliptic_check_classical);
    ec->add_option("--name", o.name, "E4D_over_E6sq or E6D_over_E4cu")->required();
    ec->add_option("--prec", o.prec, "Check 1 <= n < prec")->default_val(500);
    auto* ej = leaf(ell, "check-j", "Prime power divisibility of the j coefficients", elliptic_check_j);
    ej->add_option("--bound", o.bound, "Largest index m");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "magnetic: " << e.what() << "\n";
        return kExitInput;
    }
    if (!action) {
        err << "magnetic: no subcommand\n";
        return kExitInput;
    }

    try {
        Outcome oc = action(o);
        emit(oc, o, out);
        if (oc.code == kExitCheckFailed)
            err << "magnetic: check failed (see report)\n";
        return oc.code;
    } catch (const PrecisionError& e) {
        err << "magnetic: precision shortfall: " << e.what() << "\n"
            << "magnetic: required precision: " << e.required << "\n";
        return kExitInput;
    } catch (const InputError& e) {
        err << "magnetic: " << e.what() << "\n";
        return kExitInput;
    } catch (const Json::exception& e) {
        err << "magnetic: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "magnetic: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace magnetic::cli
