#include "cnb/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cnb::io {

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

double number(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        double v = 0.0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
    }
    throw Error(ErrorCode::InvalidInput, where + ": expected a number or decimal string");
}

int line_of(const std::string& text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < text.size() && i < byte; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace

InputConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput,
                    "parse error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "top level must be an object");
    for (const char* k : {"space", "masses", "points"})
        if (!j.contains(k)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + k + "'");
    if (!j["space"].is_string()) throw Error(ErrorCode::InvalidInput, "space must be \"S3\" or \"H3\"");
    Space s = space_from_string(j["space"].get<std::string>());
    const auto& jm = j["masses"];
    const auto& jp = j["points"];
    if (!jm.is_array() || !jp.is_array() || jm.size() != jp.size())
        throw Error(ErrorCode::InvalidInput, "masses and points must be arrays of equal length");
    std::vector<double> m;
    std::vector<Vec4> q;
    for (std::size_t i = 0; i < jm.size(); ++i) {
        m.push_back(number(jm[i], "masses[" + std::to_string(i) + "]"));
        if (!jp[i].is_array() || jp[i].size() != 4)
            throw Error(ErrorCode::InvalidInput, "points[" + std::to_string(i) + "] must have 4 entries");
        Vec4 v;
        for (int k = 0; k < 4; ++k)
            v[k] = number(jp[i][static_cast<std::size_t>(k)], "points[" + std::to_string(i) + "]");
        q.push_back(v);
    }
    InputConfig out{make_config(s, m, q), std::nullopt};
    validate(out.config);
    if (j.contains("lambda") && !j["lambda"].is_null()) out.lambda = number(j["lambda"], "lambda");
    return out;
}

InputConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json config_json(const Configuration& c) {
    json j;
    j["space"] = to_string(c.space);
    j["masses"] = json::array();
    j["points"] = json::array();
    for (const auto& b : c.bodies) {
        j["masses"].push_back(b.mass);
        j["points"].push_back({b.pos[0], b.pos[1], b.pos[2], b.pos[3]});
    }
    return j;
}

json report_json(const CCReport& r) {
    json j = config_json(r.config);
    j["lambda"] = r.lambda;
    j["residual_max"] = r.residual_max;
    j["is_special"] = r.is_special;
    j["class"] = to_string(r.cc_class);
    j["orth"] = {r.orth[0], r.orth[1], r.orth[2], r.orth[3]};
    j["I"] = r.I;
    j["U"] = r.U;
    return j;
}

json re_json(const REInstance& re, const CCReport& base) {
    json j;
    j["alpha"] = re.generator.alpha;
    j["beta"] = re.generator.beta;
    j["type"] = to_string(re.type);
    j["periodicity"] = to_string(re.periodicity);
    j["lambda"] = re.lambda;
    j["base"] = report_json(base);
    return j;
}

json conserved_json(double t, const ConservedSet& s) {
    return {{"t", t},
            {"H", s.energy},
            {"omega_xy", s.omega_xy},
            {"omega_xz", s.omega_xz},
            {"omega_xw", s.omega_xw},
            {"omega_yz", s.omega_yz},
            {"omega_yw", s.omega_yw},
            {"omega_zw", s.omega_zw}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,i,x,y,z,w,px,py,pz,pw\n";
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        const auto& s = tr.states[k];
        for (std::size_t i = 0; i < s.config.size(); ++i) {
            os << fmt(tr.times[k]) << ',' << i;
            for (int c = 0; c < 4; ++c) os << ',' << fmt(s.config.pos(i)[c]);
            for (int c = 0; c < 4; ++c) os << ',' << fmt(s.momenta[i][c]);
            os << '\n';
        }
    }
}

void write_moulton_csv(std::ostream& os, const std::vector<MoultonClass>& cat) {
    std::size_t n = cat.empty() ? 0 : cat.front().config.thetas.size();
    os << "ordering";
    for (std::size_t i = 1; i <= n; ++i) os << ",theta_" << i;
    os << ",lambda,I,U,min_hessian_eig\n";
    for (const auto& c : cat) {
        for (std::size_t k = 0; k < c.ordering.size(); ++k) os << (k ? "-" : "") << c.ordering[k] + 1;
        for (double t : c.config.thetas) os << ',' << fmt(t);
        os << ',' << fmt(c.config.lambda) << ',' << fmt(c.I) << ',' << fmt(c.U) << ',' << fmt(c.min_hessian_eig)
           << '\n';
    }
}

} // namespace cnb::io
