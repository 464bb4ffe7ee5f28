#include "efx/io.hpp"

#include "efx/errors.hpp"
#include "efx/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

namespace efx {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse_json(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string(what) + ": " + e.what());
    }
}

long long require_int(const ordered_json& j, const char* where) {
    if (!j.is_number_integer())
        throw parse_error(std::string(where) + ": expected an integer, got " + j.dump());
    return j.get<long long>();
}

Rational cell_value(const ordered_json& j, int row, int col) {
    std::string where = "valuations[" + std::to_string(row) + "][" + std::to_string(col) + "]";
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const input_error& e) {
            throw parse_error(where + ": " + e.what());
        }
    }
    throw parse_error(where + ": expected a rational literal string or integer, got " + j.dump());
}

} // namespace

Instance parse_instance(const std::string& text) {
    ordered_json j = parse_json(text, "instance file");
    if (!j.is_object()) throw parse_error("instance file: top level must be an object");
    for (const char* key : {"agents", "items", "valuations"})
        if (!j.contains(key)) throw parse_error(std::string("instance file: missing field ") + key);

    Instance inst;
    inst.n = static_cast<int>(require_int(j["agents"], "agents"));
    inst.m = static_cast<int>(require_int(j["items"], "items"));
    const ordered_json& rows = j["valuations"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != inst.n)
        throw parse_error("valuations: expected an array of " + std::to_string(inst.n) + " rows");
    inst.values.assign(std::max(inst.n, 0), {});
    for (int i = 0; i < inst.n; ++i) {
        const ordered_json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != inst.m)
            throw parse_error("valuations[" + std::to_string(i) + "]: expected an array of " +
                              std::to_string(inst.m) + " entries");
        inst.values[i].reserve(inst.m);
        for (int g = 0; g < inst.m; ++g) inst.values[i].push_back(cell_value(row[g], i, g));
    }
    try {
        inst.validate();
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    ordered_json j;
    j["agents"] = inst.n;
    j["items"] = inst.m;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < inst.n; ++i) {
        ordered_json row = ordered_json::array();
        for (int g = 0; g < inst.m; ++g) row.push_back(rational_str(inst.values[i][g]));
        rows.push_back(std::move(row));
    }
    j["valuations"] = std::move(rows);
    return j.dump(2) + "\n";
}

Allocation parse_allocation(const Instance& inst, const std::string& text) {
    ordered_json j = parse_json(text, "allocation file");
    if (!j.is_object()) throw parse_error("allocation file: top level must be an object");
    for (const char* key : {"bundles", "donated"})
        if (!j.contains(key)) throw parse_error(std::string("allocation file: missing field ") + key);

    auto id_list = [](const ordered_json& arr, const std::string& where) {
        if (!arr.is_array()) throw parse_error(where + ": expected an array of item ids");
        Bundle out;
        for (const auto& v : arr) out.push_back(static_cast<int>(require_int(v, where.c_str())));
        return out;
    };

    Allocation a;
    const ordered_json& rows = j["bundles"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != inst.n)
        throw parse_error("bundles: expected an array of " + std::to_string(inst.n) + " bundles");
    for (int i = 0; i < inst.n; ++i)
        a.bundles.push_back(id_list(rows[i], "bundles[" + std::to_string(i) + "]"));
    a.donated = id_list(j["donated"], "donated");
    try {
        a.validate(inst);
    } catch (const input_error& e) {
        throw parse_error(e.what());
    }
    return a;
}

std::string serialize_allocation(const Allocation& a) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const Bundle& b : a.bundles) rows.push_back(b);
    j["bundles"] = std::move(rows);
    j["donated"] = a.donated;
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string instance_digest(const Instance& inst) {
    std::uint64_t h = fnv1a64(serialize_instance(inst));
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file for reading: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot open file for writing: " + path);
    out << text;
    if (!out) throw input_error("failed writing file: " + path);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const Instance& inst, const std::string& path) {
    write_file(path, serialize_instance(inst));
}

Allocation load_allocation(const Instance& inst, const std::string& path) {
    return parse_allocation(inst, read_file(path));
}

void save_allocation(const Allocation& a, const std::string& path) {
    write_file(path, serialize_allocation(a));
}

} // namespace efx
