// SPDX-License-Identifier: MIT
#include "jh/io.hpp"

#include <fstream>
#include <sstream>

namespace jh {

nlohmann::ordered_json table_to_json(const CoeffTable& t0) {
    CoeffTable t = t0.materialize();
    nlohmann::ordered_json j;
    j["degree"] = t.degree();
    j["weight"] = t.weight();
    j["index"] = t.index();
    j["bound"] = t.bound();
    auto entries = nlohmann::ordered_json::array();
    if (t.degree() == 2) {
        for (const auto& [k, v] : t.entries2()) {
            nlohmann::ordered_json e;
            e["D1"] = k.D1;
            e["D2"] = k.D2;
            e["D"] = k.D;
            e["r1"] = k.r1;
            e["r2"] = k.r2;
            e["c"] = to_string(v);
            entries.push_back(std::move(e));
        }
    } else {
        for (const auto& [k, v] : t.entries1()) {
            nlohmann::ordered_json e;
            e["Ddisc"] = k.disc;
            e["r"] = k.r;
            e["c"] = to_string(v);
            entries.push_back(std::move(e));
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

CoeffTable table_from_json(const nlohmann::json& j) {
    try {
        CoeffTable t(j.at("degree").get<int>(), j.at("weight").get<int>(), j.at("index").get<i64>(),
                     j.at("bound").get<i64>());
        for (const auto& e : j.at("entries")) {
            Rat c = parse_rat(e.at("c").get<std::string>());
            if (t.degree() == 2) {
                InvKey2 k{e.at("D1").get<i64>(), e.at("D2").get<i64>(), e.at("D").get<i64>(), e.at("r1").get<i64>(),
                          e.at("r2").get<i64>()};
                t.set(k, c);
            } else {
                t.set(InvKey1{e.at("Ddisc").get<i64>(), e.at("r").get<i64>()}, c);
            }
        }
        return t;
    } catch (const nlohmann::json::exception& ex) {
        throw MathError(std::string("malformed table: ") + ex.what());
    }
}

std::string dump_table(const CoeffTable& t) { return table_to_json(t).dump(1) + "\n"; }

CoeffTable load_table(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw MathError(std::string("table is not valid JSON: ") + ex.what());
    }
    return table_from_json(j);
}

void write_table_csv(std::ostream& os, const CoeffTable& t0) {
    CoeffTable t = t0.materialize();
    if (t.degree() == 2) {
        os << "D1,D2,D,r1,r2,c\n";
        for (const auto& [k, v] : t.entries2())
            os << k.D1 << ',' << k.D2 << ',' << k.D << ',' << k.r1 << ',' << k.r2 << ',' << to_string(v) << '\n';
    } else {
        os << "Ddisc,r,c\n";
        for (const auto& [k, v] : t.entries1()) os << k.disc << ',' << k.r << ',' << to_string(v) << '\n';
    }
}

CoeffTable read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_table(ss.str());
}

void write_table_file(const std::string& path, const CoeffTable& t) {
    std::ofstream out(path);
    if (!out) throw MathError("cannot write " + path);
    out << dump_table(t);
}

}  // namespace jh
