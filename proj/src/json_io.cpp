#include "magnetic/json_io.hpp"

#include "magnetic/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace magnetic {

Json to_json(const Integer& x) { return x.get_str(); }

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const Cyclotomic& x)
{
    Cyclotomic m = x.minimal();
    Json coeffs = Json::array();
    for (const auto& c : m.coeffs())
        coeffs.push_back(to_json(c));
    return Json{{"order", m.order()}, {"coeffs", coeffs}};
}

Json to_json(const CycloMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const FourierSeries& f)
{
    Json coeffs = Json::object();
    for (const auto& [n, c] : f.terms())
        coeffs[std::to_string(n)] = to_json(c);
    return Json{{"denom", f.denom()}, {"prec", to_json(f.prec())}, {"coeffs", coeffs}};
}

Json to_json(const IntVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()));
    return out;
}

Json to_json(const RatVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

Json to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        IntVector row(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            row[j] = m(i, j);
        rows.push_back(to_json(row));
    }
    return rows;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

Integer integer_from_json(const Json& j)
{
    Rational r = rational_from_json(j);
    if (!is_integer(r))
        throw InputError("expected an integer, got " + j.dump());
    return r.get_num();
}

IntVector int_vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("expected an array, got " + j.dump());
    IntVector out;
    for (const auto& x : j)
        out.push_back(integer_from_json(x));
    return out;
}

RatVector rat_vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("expected an array, got " + j.dump());
    RatVector out;
    for (const auto& x : j)
        out.push_back(rational_from_json(x));
    return out;
}

IntMatrix int_matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw InputError("expected a nonempty array of rows");
    std::vector<IntVector> rows;
    for (const auto& r : j)
        rows.push_back(int_vector_from_json(r));
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw InputError("matrix rows have different lengths");
        for (std::size_t k = 0; k < rows[i].size(); ++k)
            m(i, k) = rows[i][k];
    }
    return m;
}

FourierSeries series_from_json(const Json& j)
{
    try {
        long denom = j.at("denom").get<long>();
        Rational prec = rational_from_json(j.at("prec"));
        std::map<long, Rational> coeffs;
        for (const auto& [key, value] : j.at("coeffs").items())
            coeffs[std::stol(key)] = rational_from_json(value);
        return FourierSeries(denom, prec, std::move(coeffs));
    } catch (const Json::exception& e) {
        throw InputError(std::string("bad series record: ") + e.what());
    }
}

std::string lattice_hash(const EvenLattice& l)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    };
    feed(std::to_string(l.rank()));
    for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = 0; j < l.rank(); ++j)
            feed("," + l.gram()(i, j).get_str());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LatticeFile lattice_from_json(const Json& j)
{
    if (!j.is_object())
        throw InputError("lattice file must hold a JSON object");
    std::string name = j.value("name", std::string());
    std::optional<EvenLattice> lattice;
    if (j.contains("gram"))
        lattice.emplace(int_matrix_from_json(j.at("gram")), name);
    else if (j.contains("builtin"))
        lattice.emplace(builtin_lattice(j.at("builtin").get<std::string>()));
    else
        throw InputError("lattice file needs \"gram\" or \"builtin\"");
    LatticeFile out{*lattice, std::nullopt, std::nullopt};
    if (j.contains("e"))
        out.e = int_vector_from_json(j.at("e"));
    if (j.contains("eprime"))
        out.eprime = rat_vector_from_json(j.at("eprime"));
    if (out.e.has_value() != out.eprime.has_value())
        throw InputError("\"e\" and \"eprime\" must be given together");
    return out;
}

Json lattice_to_json(const EvenLattice& l)
{
    const DiscriminantGroup& d = l.discriminant();
    Json cosets = Json::array();
    for (std::size_t i = 0; i < d.order(); ++i)
        cosets.push_back({{"index", i}, {"representative", to_json(d.representative(i))}, {"q", to_json(d.q_value(i))}});
    Json divisors = Json::array();
    for (long x : d.divisors())
        divisors.push_back(x);
    return Json{{"name", l.name()},
                {"gram", to_json(l.gram())},
                {"hash", lattice_hash(l)},
                {"rank", l.rank()},
                {"signature", {l.b_plus(), l.b_minus()}},
                {"determinant", to_json(l.determinant())},
                {"level", l.level()},
                {"discriminant", {{"order", d.order()}, {"divisors", divisors}, {"cosets", cosets}}}};
}

Json cusp_to_json(const CuspData& c)
{
    Json basis = Json::array();
    for (std::size_t j = 0; j < c.k_basis.cols(); ++j) {
        IntVector col(c.k_basis.rows());
        for (std::size_t i = 0; i < col.size(); ++i)
            col[i] = c.k_basis(i, j);
        basis.push_back(to_json(col));
    }
    return Json{{"e", to_json(c.e)},
                {"eprime", to_json(c.eprime)},
                {"zeta", to_json(c.zeta)},
                {"n_e", c.n_e},
                {"k_basis", basis},
                {"k_gram", to_json(c.k.gram())},
                {"k_signature", {c.k.b_plus(), c.k.b_minus()}}};
}

Json form_to_json(const VVModularForm& f)
{
    const DiscriminantGroup& d = f.rep().disc();
    Json comps = Json::array();
    for (std::size_t g = 0; g < d.order(); ++g) {
        const FourierSeries& s = f.component(g);
        Json coeffs = Json::object();
        for (const auto& [n, c] : s.terms())
            coeffs[to_string(make_rational(n, s.denom()))] = to_json(c);
        comps.push_back({{"coset", to_json(d.representative(g))}, {"prec", to_json(s.prec())}, {"coeffs", coeffs}});
    }
    return Json{{"schema", kSchemaVersion},
                {"weight", to_json(f.weight())},
                {"lattice_ref", lattice_hash(f.rep().lattice())},
                {"dual", f.rep().is_dual()},
                {"prec", to_json(f.prec())},
                {"components", comps}};
}

VVModularForm form_from_json(const Json& j, std::shared_ptr<const WeilRep> rep)
{
    try {
        if (j.contains("schema") && j.at("schema").get<int>() != kSchemaVersion)
            throw InputError("unsupported form schema " + j.at("schema").dump());
        if (j.contains("lattice_ref") && j.at("lattice_ref").get<std::string>() != lattice_hash(rep->lattice()))
            throw InputError("form was written for a different lattice (lattice_ref " +
                             j.at("lattice_ref").get<std::string>() + ", expected " + lattice_hash(rep->lattice()) +
                             ")");
        if (j.value("dual", false) != rep->is_dual())
            throw InputError("form and representation disagree on dual");
        Rational weight = rational_from_json(j.at("weight"));
        const DiscriminantGroup& d = rep->disc();
        std::vector<std::optional<FourierSeries>> comps(d.order());
        std::optional<Rational> default_prec;
        if (j.contains("prec"))
            default_prec = rational_from_json(j.at("prec"));
        for (const auto& c : j.at("components")) {
            std::size_t g = d.coset_of(rat_vector_from_json(c.at("coset")));
            if (comps[g])
                throw InputError("coset listed twice in form file");
            Rational prec = c.contains("prec") ? rational_from_json(c.at("prec"))
                                               : (default_prec ? *default_prec : throw InputError("missing prec"));
            Integer denom(rep->q_value(g).get_den());
            std::vector<std::pair<Rational, Rational>> terms;
            for (const auto& [key, value] : c.at("coeffs").items()) {
                Rational x = parse_rational(key);
                terms.emplace_back(x, rational_from_json(value));
                denom = lcm(denom, Integer(x.get_den()));
            }
            std::map<long, Rational> coeffs;
            for (const auto& [x, v] : terms)
                coeffs[Integer(x * Rational(denom)).get_si()] = v;
            comps[g] = FourierSeries(denom.get_si(), prec, std::move(coeffs));
        }
        Rational fill;
        bool have_fill = false;
        for (const auto& c : comps)
            if (c && (!have_fill || c->prec() < fill)) {
                fill = c->prec();
                have_fill = true;
            }
        if (default_prec) {
            fill = *default_prec;
            have_fill = true;
        }
        if (!have_fill)
            throw InputError("form file lists no components and no prec");
        std::vector<FourierSeries> out;
        for (std::size_t g = 0; g < d.order(); ++g)
            out.push_back(comps[g] ? *comps[g]
                                   : FourierSeries(Integer(rep->q_value(g).get_den()).get_si(), fill));
        return VVModularForm(std::move(rep), weight, std::move(out));
    } catch (const Json::exception& e) {
        throw InputError(std::string("bad form file: ") + e.what());
    }
}

namespace {

Json hypothesis_flag(const std::optional<bool>& v)
{
    if (!v)
        return "unasserted";
    return *v;
}

}  // namespace

Json report_to_json(const DivisibilityReport& r)
{
    Json bad = Json::array();
    for (const auto& e : r.entries)
        if (e.verdict != Divisibility::yes)
            bad.push_back({{"coset", e.coset},
                           {"exponent", to_json(e.exponent)},
                           {"coefficient", to_json(e.coefficient)},
                           {"modulus", to_json(e.modulus)},
                           {"verdict", std::string(to_string(e.verdict))}});
    return Json{{"level", r.level},
                {"s", r.s},
                {"checked", r.entries.size()},
                {"passed", r.passed},
                {"failed", r.failed},
                {"indeterminate", r.indeterminate},
                {"all_pass", r.all_pass()},
                {"not_passing", bad}};
}

Json report_to_json(const MagnetReport& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"l", e.l},
                           {"value", to_json(e.value)},
                           {"modulus", to_json(e.modulus)},
                           {"verdict", std::string(to_string(e.verdict))}});
    return Json{{"lambda0", to_json(r.lambda0)},
                {"q_lambda0", to_json(r.q_lambda0)},
                {"level", r.level},
                {"s", r.s},
                {"modulus_base", to_json(r.modulus_base)},
                {"entries", entries},
                {"all_pass", r.all_pass()},
                {"hypotheses",
                 {{"input_divisibility_certified", r.input_divisibility_certified},
                  {"weight_condition", r.weight_condition},
                  {"cusp_space_trivial", hypothesis_flag(r.cusp_space_trivial)}}}};
}

Json report_to_json(const ClassicalReport& r)
{
    Json bad = Json::array();
    for (const auto& e : r.entries)
        if (!e.pass)
            bad.push_back({{"n", e.n}, {"coefficient", to_json(e.coefficient)}, {"modulus", to_json(e.modulus)}});
    return Json{{"name", std::string(to_string(r.which))},
                {"weight", weight_of(r.which)},
                {"exponent", divisibility_exponent(r.which)},
                {"prec", r.prec},
                {"checked", r.entries.size()},
                {"failures", r.failures},
                {"failing", bad}};
}

Json report_to_json(const JReport& r)
{
    Json bad = Json::array();
    for (const auto& e : r.entries)
        if (!e.pass) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), e.coefficient.get_mpz_t(), e.modulus.get_mpz_t());
            bad.push_back({{"m", e.m},
                           {"abcd", {e.a, e.b, e.c, e.d}},
                           {"coefficient", to_json(e.coefficient)},
                           {"modulus", to_json(e.modulus)},
                           {"gcd", to_json(g)}});
        }
    return Json{{"bound", r.bound},
                {"formula", "2^(3a+8) 3^(2b+5) 5^(c+1) 7^d | a_j(2^a 3^b 5^c 7^d n)"},
                {"checked", r.entries.size()},
                {"failures", r.failures},
                {"failing", bad}};
}

Json expansion_to_json(const LiftExpansion& e, const CuspData& cusp)
{
    Json coeffs = Json::array();
    for (const auto& [u, v] : e.coefficients)
        coeffs.push_back({{"lambda", to_json(u)},
                          {"k_coordinates", to_json(k_coordinates(cusp, u))},
                          {"q", to_json(dual_norm(cusp, u))},
                          {"value", to_json(v)}});
    return Json{{"constant_term", to_json(e.constant_term)},
                {"w0", to_json(e.w0)},
                {"height", to_json(e.height)},
                {"coefficients", coeffs}};
}

Json fkdd_to_json(const FkdDCoefficients& f, int digits)
{
    Json coeffs = Json::array();
    for (std::size_t m = 0; m < f.coefficients.size(); ++m)
        coeffs.push_back({{"m", m + 1},
                          {"re", to_decimal(f.coefficients[m].re, digits)},
                          {"im", to_decimal(f.coefficients[m].im, digits)},
                          {"class_tail_bound", to_decimal(f.class_tail_bound[m], 6)}});
    return Json{{"k", f.k},
                {"d", f.d},
                {"D", f.D},
                {"a_max", f.a_max},
                {"bits", f.bits},
                {"classes", f.classes},
                {"normalization", "C = 1"},
                {"pole_height", to_decimal(f.pole_height, 20)},
                {"coefficients", coeffs}};
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace magnetic
