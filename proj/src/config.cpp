#include "wcop/config.hpp"

#include "wcop/errors.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace wcop {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::array<const char*, 6> kTaskNames = {"bounded_bloch",        "compact_bloch",
                                                   "bounded_little_bloch", "compact_little_bloch",
                                                   "lemma_probes",         "oracle"};

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
    throw ParseError(path + ": " + message, 0, path);
}

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
    throw ValidationError(path + ": " + message);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const Json& node, const std::string& path) {
    if (!node.is_number()) field_error(path, "expected a number");
    return node.get<double>();
}

int integer(const Json& node, const std::string& path) {
    if (!node.is_number_integer()) field_error(path, "expected an integer");
    return node.get<int>();
}

Complex complex_value(const Json& node, const std::string& path) {
    if (node.is_number()) return node.get<double>();
    if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number())
        return {node[0].get<double>(), node[1].get<double>()};
    field_error(path, "expected a number or a [re, im] pair");
}

const Json& member(const Json& node, const std::string& key, const std::string& path) {
    if (!node.is_object()) field_error(path, "expected an object");
    auto it = node.find(key);
    if (it == node.end()) field_error(join(path, key), "missing field");
    return *it;
}

void only_keys(const Json& node, std::initializer_list<const char*> keys, const std::string& path) {
    if (!node.is_object()) field_error(path, "expected an object");
    for (auto it = node.begin(); it != node.end(); ++it) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
            field_error(join(path, it.key()), "unknown field");
    }
}

// Single-key object {"form": body}.
std::pair<std::string, const Json*> tagged(const Json& node, const std::string& path) {
    if (!node.is_object() || node.size() != 1) field_error(path, "expected an object with exactly one form key");
    return {node.begin().key(), &node.begin().value()};
}

template <class Fn>
auto checked(const std::string& path, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        invalid(path, what);
    } catch (const DomainError& e) {
        invalid(path, e.what());
    }
}

int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of the last key in `path`, or 0.
int line_of_field(const std::string& text, const std::string& path) {
    std::string key = path;
    if (auto bracket = key.find('['); bracket != std::string::npos) key = key.substr(0, bracket);
    if (auto dot = key.rfind('.'); dot != std::string::npos) key = key.substr(dot + 1);
    if (key.empty()) return 0;
    const auto pos = text.find("\"" + key + "\"");
    return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

RadialGrid parse_grid(const Json& node, const std::string& path) {
    only_keys(node, {"K", "M", "panelOrder"}, path);
    RadialGrid grid;
    if (node.contains("K")) grid.depth = integer(node["K"], join(path, "K"));
    if (node.contains("M")) grid.angular_nodes = integer(node["M"], join(path, "M"));
    if (node.contains("panelOrder")) grid.panel_order = integer(node["panelOrder"], join(path, "panelOrder"));
    checked(path, [&] { grid.validate(); });
    return grid;
}

Json grid_json(const RadialGrid& grid) {
    Json j;
    j["K"] = grid.depth;
    j["M"] = grid.angular_nodes;
    j["panelOrder"] = grid.panel_order;
    return j;
}

}  // namespace

const char* to_string(Task task) noexcept { return kTaskNames[static_cast<std::size_t>(task)]; }

std::optional<Task> task_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kTaskNames.size(); ++i)
        if (name == kTaskNames[i]) return static_cast<Task>(i);
    return std::nullopt;
}

std::vector<Task> schedule(const std::vector<Task>& requested) {
    std::array<bool, kTaskNames.size()> wanted{};
    for (Task t : requested) wanted[static_cast<std::size_t>(t)] = true;
    auto need = [&](Task t) { wanted[static_cast<std::size_t>(t)] = true; };
    if (wanted[static_cast<std::size_t>(Task::CompactLittleBloch)]) need(Task::BoundedLittleBloch);
    if (wanted[static_cast<std::size_t>(Task::BoundedLittleBloch)]) need(Task::BoundedBloch);
    if (wanted[static_cast<std::size_t>(Task::CompactBloch)]) need(Task::BoundedBloch);
    std::vector<Task> out;
    for (std::size_t i = 0; i < wanted.size(); ++i)
        if (wanted[i]) out.push_back(static_cast<Task>(i));
    return out;
}

DiskFunction parse_disk_function(const Json& node, const std::string& path) {
    if (node.is_number() || node.is_array()) return DiskFunction::constant(complex_value(node, path));
    if (node.is_string()) {
        if (node.get<std::string>() == "z") return DiskFunction::identity();
        field_error(path, "the only string form is \"z\"");
    }
    const auto [form, body] = tagged(node, path);
    const std::string here = join(path, form);
    if (form == "poly") {
        if (!body->is_array() || body->empty()) field_error(here, "expected a nonempty coefficient list");
        std::vector<Complex> coeffs;
        for (std::size_t i = 0; i < body->size(); ++i) coeffs.push_back(complex_value((*body)[i], indexed(here, i)));
        return DiskFunction::power_series(std::move(coeffs));
    }
    if (form == "kernel") {
        only_keys(*body, {"a", "q", "scale"}, here);
        const Complex a = complex_value(member(*body, "a", here), join(here, "a"));
        const double q = number(member(*body, "q", here), join(here, "q"));
        const Complex scale = body->contains("scale") ? complex_value((*body)["scale"], join(here, "scale")) : 1.0;
        return checked(here, [&] { return DiskFunction::fractional_kernel(a, q, scale); });
    }
    if (form == "sum") {
        if (!body->is_array() || body->empty()) field_error(here, "expected a nonempty list of functions");
        std::vector<DiskFunction> terms;
        for (std::size_t i = 0; i < body->size(); ++i)
            terms.push_back(parse_disk_function((*body)[i], indexed(here, i)));
        return DiskFunction::sum(std::move(terms));
    }
    if (form == "product") {
        if (!body->is_array() || body->size() != 2) field_error(here, "expected a pair of functions");
        return DiskFunction::product(parse_disk_function((*body)[0], indexed(here, 0)),
                                     parse_disk_function((*body)[1], indexed(here, 1)));
    }
    if (form == "scaled") {
        only_keys(*body, {"factor", "f"}, here);
        return DiskFunction::scaled(complex_value(member(*body, "factor", here), join(here, "factor")),
                                    parse_disk_function(member(*body, "f", here), join(here, "f")));
    }
    if (form == "compose") {
        only_keys(*body, {"f", "phi"}, here);
        return DiskFunction::composed(parse_disk_function(member(*body, "f", here), join(here, "f")),
                                      parse_self_map(member(*body, "phi", here), join(here, "phi")));
    }
    field_error(here, "unknown function form");
}

SelfMap parse_self_map(const Json& node, const std::string& path) {
    if (node.is_string()) {
        if (node.get<std::string>() == "identity") return SelfMap::identity();
        field_error(path, "the only string form is \"identity\"");
    }
    const auto [form, body] = tagged(node, path);
    const std::string here = join(path, form);
    if (form == "constant") {
        const Complex c = complex_value(*body, here);
        return checked(here, [&] { return SelfMap::constant(c); });
    }
    if (form == "affine") {
        only_keys(*body, {"a", "b"}, here);
        const Complex a = complex_value(member(*body, "a", here), join(here, "a"));
        const Complex b = complex_value(member(*body, "b", here), join(here, "b"));
        return checked(here, [&] { return SelfMap::affine(a, b); });
    }
    if (form == "monomial") {
        only_keys(*body, {"k", "s"}, here);
        const int k = integer(member(*body, "k", here), join(here, "k"));
        const Complex s = body->contains("s") ? complex_value((*body)["s"], join(here, "s")) : 1.0;
        return checked(here, [&] { return SelfMap::monomial(k, s); });
    }
    if (form == "blaschke") {
        only_keys(*body, {"a"}, here);
        const Complex a = complex_value(member(*body, "a", here), join(here, "a"));
        return checked(here, [&] { return SelfMap::blaschke_factor(a); });
    }
    if (form == "blaschke_product") {
        only_keys(*body, {"zeros", "c"}, here);
        const Json& zeros_node = member(*body, "zeros", here);
        if (!zeros_node.is_array() || zeros_node.empty()) field_error(join(here, "zeros"), "expected a nonempty list");
        std::vector<Complex> zeros;
        for (std::size_t i = 0; i < zeros_node.size(); ++i)
            zeros.push_back(complex_value(zeros_node[i], indexed(join(here, "zeros"), i)));
        const Complex c = body->contains("c") ? complex_value((*body)["c"], join(here, "c")) : 1.0;
        return checked(here, [&] { return SelfMap::blaschke_product(std::move(zeros), c); });
    }
    if (form == "scaled") {
        only_keys(*body, {"s", "phi"}, here);
        const Complex s = complex_value(member(*body, "s", here), join(here, "s"));
        SelfMap inner = parse_self_map(member(*body, "phi", here), join(here, "phi"));
        return checked(here, [&] { return SelfMap::scaled(s, std::move(inner)); });
    }
    if (form == "compose") {
        only_keys(*body, {"outer", "inner"}, here);
        return SelfMap::composition(parse_self_map(member(*body, "outer", here), join(here, "outer")),
                                    parse_self_map(member(*body, "inner", here), join(here, "inner")));
    }
    field_error(here, "unknown self-map form");
}

SpaceSpec parse_space(const Json& node, const std::string& path) {
    if (node.is_string()) {
        const std::string text = node.get<std::string>();
        const std::string prefix = "bergman:";
        if (text.rfind(prefix, 0) != 0) field_error(path, "shorthand must look like \"bergman:p\"");
        double p = 0.0;
        try {
            std::size_t used = 0;
            p = std::stod(text.substr(prefix.size()), &used);
            if (used != text.size() - prefix.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            field_error(path, "cannot read p from \"" + text + "\"");
        }
        return checked(path, [&] { return SpaceSpec::bergman(p); });
    }
    only_keys(node, {"p", "weight"}, path);
    const double p = number(member(node, "p", path), join(path, "p"));
    const std::string wpath = join(path, "weight");
    const Json& w = member(node, "weight", path);
    only_keys(w, {"alpha", "logExponent", "s", "t"}, wpath);
    const double alpha = number(member(w, "alpha", wpath), join(wpath, "alpha"));
    const double gamma = w.contains("logExponent") ? number(w["logExponent"], join(wpath, "logExponent")) : 0.0;
    const double s = number(member(w, "s", wpath), join(wpath, "s"));
    const double t = number(member(w, "t", wpath), join(wpath, "t"));
    return checked(path, [&] { return SpaceSpec(p, NormalWeight(alpha, gamma, s, t)); });
}

RadialGrid parse_grid_triple(const std::string& text) {
    std::array<int, 3> v{};
    std::stringstream in(text);
    std::string part;
    std::size_t n = 0;
    while (std::getline(in, part, ',')) {
        if (n == 3) throw ValidationError("grid must be K,M,ORDER");
        try {
            std::size_t used = 0;
            v[n] = std::stoi(part, &used);
            if (used != part.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw ValidationError("grid must be K,M,ORDER with integer entries (got \"" + text + "\")");
        }
        ++n;
    }
    if (n != 3) throw ValidationError("grid must be K,M,ORDER");
    return RadialGrid(v[0], v[1], v[2]);
}

RunConfig parse_config(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), "");
    }
    try {
        if (!doc.is_object()) field_error("", "the document must be an object");
        only_keys(doc, {"name", "symbol", "space", "grid", "tasks", "options", "output"}, "");
        RunConfig config;
        if (doc.contains("name")) {
            if (!doc["name"].is_string()) field_error("name", "expected a string");
            config.name = doc["name"].get<std::string>();
        }
        const Json& symbol = member(doc, "symbol", "");
        only_keys(symbol, {"u", "phi"}, "symbol");
        config.symbol.u = parse_disk_function(member(symbol, "u", "symbol"), "symbol.u");
        config.symbol.phi = parse_self_map(member(symbol, "phi", "symbol"), "symbol.phi");
        config.space = doc.contains("space") ? parse_space(doc["space"], "space") : SpaceSpec::bergman(2.0);
        if (doc.contains("grid")) config.grid = parse_grid(doc["grid"], "grid");

        const Json& tasks = member(doc, "tasks", "");
        if (!tasks.is_array()) field_error("tasks", "expected a list of task names");
        if (tasks.empty()) invalid("tasks", "at least one task is required");
        std::vector<Task> requested;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (!tasks[i].is_string()) field_error(indexed("tasks", i), "expected a task name");
            auto task = task_from_string(tasks[i].get<std::string>());
            if (!task) field_error(indexed("tasks", i), "unknown task \"" + tasks[i].get<std::string>() + "\"");
            requested.push_back(*task);
        }
        config.tasks = schedule(requested);

        if (doc.contains("options")) {
            only_keys(doc["options"], {"forceBoundaryAnalysis"}, "options");
            if (doc["options"].contains("forceBoundaryAnalysis")) {
                const Json& f = doc["options"]["forceBoundaryAnalysis"];
                if (!f.is_boolean()) field_error("options.forceBoundaryAnalysis", "expected true or false");
                config.force_boundary_analysis = f.get<bool>();
            }
        }
        if (doc.contains("output")) {
            only_keys(doc["output"], {"dir", "formats"}, "output");
            const Json& out = doc["output"];
            if (out.contains("dir")) {
                if (!out["dir"].is_string()) field_error("output.dir", "expected a path");
                config.output_dir = out["dir"].get<std::string>();
            }
            if (out.contains("formats")) {
                if (!out["formats"].is_array()) field_error("output.formats", "expected a list");
                for (std::size_t i = 0; i < out["formats"].size(); ++i) {
                    const Json& f = out["formats"][i];
                    if (!f.is_string() || (f != "json" && f != "csv"))
                        invalid(indexed("output.formats", i), "format must be \"json\" or \"csv\"");
                    config.formats.push_back(f.get<std::string>());
                }
            }
        }

        // Invariants of the parsed objects, checked before any computation.
        const auto normality = check_normality(config.space.weight);
        if (!normality.normal) invalid("space.weight", normality.detail);
        const auto map_check = check_self_map(config.symbol.phi);
        if (!map_check.ok()) invalid("symbol.phi", "not a self-map of the disk: " + map_check.detail);

        config.echo = doc;
        Json names = Json::array();
        for (Task t : config.tasks) names.push_back(to_string(t));
        config.echo["tasks"] = names;
        config.echo["grid"] = grid_json(config.grid);
        if (!config.echo.contains("space")) config.echo["space"] = "bergman:2";
        config.echo.erase("output");
        return config;
    } catch (const ParseError& e) {
        throw ParseError(e.what(), e.line() != 0 ? e.line() : line_of_field(text, e.field()), e.field());
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void override_grid(RunConfig& config, const RadialGrid& grid) {
    grid.validate();
    config.grid = grid;
    config.echo["grid"] = grid_json(grid);
}

}  // namespace wcop
