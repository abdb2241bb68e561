#include "rissim/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rissim {

namespace {

constexpr double axis_tol = 1e-9;

bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

bool unit(const Vec3& v) { return std::abs(norm(v) - 1.0) <= axis_tol; }

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw config_error(field + ": " + what);
}

} // namespace

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

double wavelength(double frequency_hz) {
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw config_error("frequency must be positive and finite");
    return speed_of_light_mps / frequency_hz;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void validate(const Scenario& s) {
    if (s.bs.antennas < 2) fail("bs.antennas", "must be at least 2");
    if (!finite(s.bs.position)) fail("bs.position", "must be finite");
    if (!finite(s.bs.array_axis) || !unit(s.bs.array_axis))
        fail("bs.array_axis", "must be a unit vector");

    if (s.riss.empty()) fail("riss", "at least one panel is required");
    for (std::size_t k = 0; k < s.riss.size(); ++k) {
        const auto& r = s.riss[k];
        const std::string base = "riss[" + std::to_string(k) + "]";
        if (r.nx < 1) fail(base + ".nx", "must be at least 1");
        if (r.ny < 1) fail(base + ".ny", "must be at least 1");
        if (r.n_active < 0) fail(base + ".n_active", "must be non-negative");
        if (!finite(r.position)) fail(base + ".position", "must be finite");
        if (!finite(r.axis_u) || !unit(r.axis_u)) fail(base + ".axis_u", "must be a unit vector");
        if (!finite(r.axis_v) || !unit(r.axis_v)) fail(base + ".axis_v", "must be a unit vector");
        if (std::abs(dot(r.axis_u, r.axis_v)) > axis_tol)
            fail(base + ".axis_v", "must be orthogonal to axis_u");
        for (std::size_t j = 0; j < k; ++j)
            if (distance(s.riss[j].position, r.position) == 0.0)
                fail(base + ".position", "coincides with riss[" + std::to_string(j) + "]");
    }

    if (!finite(s.user_position)) fail("user_position", "must be finite");

    if (!(s.rf.frequency_hz > 0.0)) fail("rf.frequency_hz", "must be positive");
    if (!(s.rf.noise_power_w > 0.0)) fail("rf.noise_dbm", "noise power must be positive");
    if (!(s.rf.rcs_m2 > 0.0)) fail("rf.rcs_m2", "must be positive");
    if (!(s.rf.snr_threshold > 0.0)) fail("rf.snr_threshold_db", "must yield a positive ratio");
    if (!(s.rf.total_power_w > 0.0)) fail("rf.total_power_w", "must be positive");
}

double departure_sine(const BsConfig& bs, const Vec3& target) {
    const Vec3 d = target - bs.position;
    const double len = norm(d);
    if (len == 0.0) throw config_error("degenerate geometry: target coincides with the BS");
    return dot(d, bs.array_axis) / len;
}

std::pair<double, double> panel_direction_cosines(const RissConfig& riss, const Vec3& target) {
    const Vec3 d = target - riss.position;
    const double len = norm(d);
    if (len == 0.0) throw config_error("degenerate geometry: target coincides with the panel");
    return {dot(d, riss.axis_u) / len, dot(d, riss.axis_v) / len};
}

namespace {

using nlohmann::json;

const json& member(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
    return *it;
}

double number(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

Vec3 vec3(const json& obj, const std::string& path, const char* key) {
    const json& v = member(obj, path, key);
    const std::string p = path.empty() ? key : path + "." + key;
    if (!v.is_array() || v.size() != 3) fail(p, "expected [x, y, z]");
    for (const auto& e : v)
        if (!e.is_number()) fail(p, "expected [x, y, z] of numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }
}

} // namespace

Scenario load_scenario(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("scenario: ") + e.what());
    }
    if (!doc.is_object()) fail("scenario", "expected a JSON object");
    reject_unknown(doc, "", {"bs", "riss", "user_position", "rf"});

    Scenario s;

    const json& bs = member(doc, "scenario", "bs");
    reject_unknown(bs, "bs", {"antennas", "position", "array_axis"});
    s.bs.antennas = integer(bs, "bs", "antennas");
    s.bs.position = vec3(bs, "bs", "position");
    s.bs.array_axis = vec3(bs, "bs", "array_axis");

    const json& riss = member(doc, "scenario", "riss");
    if (!riss.is_array()) fail("riss", "expected an array");
    for (std::size_t k = 0; k < riss.size(); ++k) {
        const std::string path = "riss[" + std::to_string(k) + "]";
        const json& r = riss[k];
        if (!r.is_object()) fail(path, "expected an object");
        reject_unknown(r, path, {"nx", "ny", "n_active", "position", "axis_u", "axis_v"});
        RissConfig rc;
        rc.nx = integer(r, path, "nx");
        rc.ny = integer(r, path, "ny");
        rc.n_active = integer(r, path, "n_active");
        rc.position = vec3(r, path, "position");
        rc.axis_u = vec3(r, path, "axis_u");
        rc.axis_v = vec3(r, path, "axis_v");
        s.riss.push_back(rc);
    }

    s.user_position = vec3(doc, "", "user_position");

    const json& rf = member(doc, "scenario", "rf");
    reject_unknown(rf, "rf",
                   {"frequency_hz", "noise_dbm", "rcs_m2", "snr_threshold_db", "total_power_w"});
    s.rf.frequency_hz = number(rf, "rf", "frequency_hz");
    s.rf.noise_power_w = dbm_to_watts(number(rf, "rf", "noise_dbm"));
    s.rf.rcs_m2 = number(rf, "rf", "rcs_m2");
    s.rf.snr_threshold = db_to_linear(number(rf, "rf", "snr_threshold_db"));
    s.rf.total_power_w = number(rf, "rf", "total_power_w");

    validate(s);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

} // namespace rissim
