#include "gkrs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gkrs::io {

using profiles::Family;
using profiles::Gauge;
using profiles::ProfileSet;

json profile_to_json(const ProfileSet& ps) {
    json j;
    j["schema"] = "gkrs-profile/1";
    j["family"] = profiles::family_name(ps.family);
    j["ell"] = ps.ell();
    j["dims"] = ps.partition.dims;
    j["n"] = ps.n();
    j["alpha"] = ps.alpha;
    j["a"] = ps.a;
    j["scale"] = ps.scale;
    j["gauge"] = ps.gauge == Gauge::UnitExpCoeff ? "c1" : "q1";
    // F_j = P for the interior factors; the exponential coefficient c attaches
    // to the single non-polynomial profile (all of them for the Cao type)
    j["P"] = ps.F.back().poly().coeffs();
    j["c"] = ps.F.back().exp_coeff();
    j["rate"] = ps.F.back().rate();
    j["q"] = ps.q.coeffs();
    j["pc"] = ps.pc.coeffs();
    j["epsilon"] = ps.epsilon;
    j["flags"] = {{"flat", ps.flat},
                  {"ricci_flat", ps.ricci_flat},
                  {"incomplete_expected", ps.incomplete_expected}};
    return j;
}

ProfileSet profile_from_json(const json& j) {
    if (j.at("schema").get<std::string>() != "gkrs-profile/1")
        throw std::runtime_error("profile record: unsupported schema");
    ProfileSet ps;
    auto fam = profiles::family_from_name(j.at("family").get<std::string>());
    if (!fam) throw std::runtime_error("profile record: unknown family");
    ps.family = *fam;
    ps.partition.ell = j.at("ell").get<int>();
    ps.partition.dims = j.at("dims").get<std::vector<int>>();
    ps.alpha = j.at("alpha").get<std::vector<double>>();
    ps.a = j.at("a").get<double>();
    ps.scale = j.at("scale").get<double>();
    ps.gauge = j.at("gauge").get<std::string>() == "c1" ? Gauge::UnitExpCoeff
                                                        : Gauge::UnitQAtFirstNode;
    symfun::Polynomial P(j.at("P").get<std::vector<double>>());
    double c = j.at("c").get<double>();
    double rate = j.at("rate").get<double>();
    ps.q = symfun::Polynomial(j.at("q").get<std::vector<double>>());
    ps.pc = symfun::Polynomial(j.at("pc").get<std::vector<double>>());
    ps.epsilon = j.at("epsilon").get<std::vector<int>>();
    const auto& flags = j.at("flags");
    ps.flat = flags.at("flat").get<bool>();
    ps.ricci_flat = flags.at("ricci_flat").get<bool>();
    ps.incomplete_expected = flags.at("incomplete_expected").get<bool>();

    const int l = ps.ell();
    ps.domain.resize(l);
    ps.zero_orders.assign(l, {});
    if (ps.family == Family::CaoType) {
        for (int jx = 0; jx + 1 < l; ++jx) ps.domain[jx] = {ps.alpha[jx], ps.alpha[jx + 1]};
        ps.domain[l - 1] = {ps.alpha.back(), std::numeric_limits<double>::infinity()};
        ps.F.assign(l, symfun::ExpPoly(P, c, rate));
        for (int jx = 0; jx < l; ++jx) {
            for (int k = 0; k < l; ++k)
                ps.zero_orders[jx].push_back({ps.alpha[k], ps.partition.dims[k] + 1});
            if (ps.partition.dims[jx] > 0)
                ps.eta_multiplicity.emplace_back(ps.alpha[jx], ps.partition.dims[jx]);
        }
    } else if (ps.family == Family::TaubNUTType) {
        ps.domain[0] = {-std::numeric_limits<double>::infinity(), ps.alpha[0]};
        for (int jx = 1; jx + 1 < l; ++jx) ps.domain[jx] = {ps.alpha[jx - 1], ps.alpha[jx]};
        ps.domain[l - 1] = {ps.alpha.back(), std::numeric_limits<double>::infinity()};
        for (int jx = 0; jx < l - 1; ++jx) ps.F.emplace_back(P, 0.0, rate);
        ps.F.emplace_back(P, c, rate);
        for (int jx = 0; jx < l - 1; ++jx) {
            for (int k = 0; k < l - 1; ++k)
                ps.zero_orders[jx].push_back({ps.alpha[k], ps.partition.dims[k] + 1});
            if (ps.partition.dims[jx] > 0)
                ps.eta_multiplicity.emplace_back(ps.alpha[jx], ps.partition.dims[jx]);
        }
        ps.zero_orders[l - 1].push_back({ps.alpha.back(), 1});
    } else {
        throw std::runtime_error("profile record: only fibred family records round-trip");
    }
    return ps;
}

json calabi_to_json(const profiles::CalabiProfile& cp) {
    json j;
    j["schema"] = "gkrs-calabi-profile/1";
    j["family"] = cp.cigar ? "cigar" : "calabi";
    j["n"] = cp.n;
    j["r"] = cp.r;
    j["alpha"] = cp.alpha;
    j["a"] = cp.a;
    j["prefactor"] = cp.prefactor;
    j["blow_down"] = cp.blow_down;
    j["theta_prime_at_alpha"] = cp.theta_prime_at_alpha();
    j["notes"] = cp.notes();
    return j;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        body_ += header[i];
        body_ += (i + 1 < header.size()) ? ',' : '\n';
    }
}

void CsvWriter::row(std::span<const double> values) {
    for (size_t i = 0; i < values.size(); ++i) {
        body_ += format_double(values[i]);
        body_ += (i + 1 < values.size()) ? ',' : '\n';
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << text;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace gkrs::io
