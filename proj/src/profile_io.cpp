#include "riesz/profile_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace riesz {

namespace {

using nlohmann::json;

[[noreturn]] void rethrow_with_line(const std::string& text, const json::parse_error& e,
                                    const std::string& origin) {
    std::size_t line = 1;
    const std::size_t upto = std::min(e.byte, text.size());
    for (std::size_t i = 0; i < upto; ++i)
        if (text[i] == '\n') ++line;
    std::ostringstream msg;
    msg << origin << ":" << line << ": " << e.what();
    throw std::runtime_error(msg.str());
}

RadialProfile from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("profile: top level must be an object");
    std::vector<double> nodes = j.at("nodes").get<std::vector<double>>();
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    const bool monotone = j.value("monotone", false);
    std::optional<TailModel> tail;
    if (j.contains("tail") && !j["tail"].is_null()) {
        tail = TailModel{j["tail"].at("A").get<double>(), j["tail"].at("beta").get<double>()};
    }
    std::optional<double> cutoff;
    if (j.contains("cutoff") && !j["cutoff"].is_null()) cutoff = j["cutoff"].get<double>();
    return RadialProfile::from_grid(std::move(nodes), std::move(values), monotone, tail, cutoff);
}

} // namespace

RadialProfile parse_profile_json(const std::string& text) {
    try {
        return from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        rethrow_with_line(text, e, "<string>");
    }
}

RadialProfile load_profile_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return from_json(json::parse(text));
    } catch (const json::parse_error& e) {
        rethrow_with_line(text, e, path);
    }
}

std::string profile_to_json(const RadialProfile& f) {
    json j;
    j["nodes"] = f.nodes();
    j["values"] = f.values();
    j["monotone"] = f.monotone_decreasing();
    if (f.tail())
        j["tail"] = {{"A", f.tail()->coefficient}, {"beta", f.tail()->exponent}};
    else
        j["tail"] = nullptr;
    if (f.cutoff())
        j["cutoff"] = *f.cutoff();
    else
        j["cutoff"] = nullptr;
    return j.dump(2);
}

} // namespace riesz
