#include "frontfix/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "frontfix/errors.hpp"

namespace frontfix {

std::string format_float17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::path dir = path.parent_path();
    if (!dir.empty()) {
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    }
    static std::mt19937_64 rng{std::random_device{}()};
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scheme parse_scheme(const std::string& name) {
    if (name == "implicit") return Scheme::Implicit;
    if (name == "explicit") return Scheme::Explicit;
    throw InvalidArgument("unknown scheme '" + name + "' (expected implicit or explicit)");
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("config " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "r") cfg.params.r = value.get<double>();
        else if (key == "sigma") cfg.params.sigma = value.get<double>();
        else if (key == "T") cfg.params.T = value.get<double>();
        else if (key == "E") cfg.params.E = value.get<double>();
        else if (key == "x_inf") cfg.x_inf = value.get<double>();
        else if (key == "J") cfg.J = value.get<int>();
        else if (key == "mu") cfg.mu = value.get<double>();
        else if (key == "scheme") cfg.scheme = parse_scheme(value.get<std::string>());
        else throw InvalidArgument("config: unknown key '" + key + "'");
    }
}

} // namespace frontfix
