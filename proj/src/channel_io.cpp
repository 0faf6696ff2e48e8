#include "macc/channel_io.hpp"

#include <fstream>

#include "macc/errors.hpp"

namespace macc {

namespace {

using nlohmann::json;

int require_positive_int(const json& doc, const char* key) {
    if (!doc.contains(key)) throw FormatError(std::string("channel spec is missing \"") + key + "\"");
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
        throw FormatError(std::string("channel spec field \"") + key + "\" must be a positive integer");
    return v.get<int>();
}

json load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

std::vector<double> parse_number_row(const json& row, const char* what) {
    if (!row.is_array()) throw FormatError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(row.size());
    for (const json& v : row) {
        if (!v.is_number()) throw FormatError(std::string(what) + " holds a non-numeric entry");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> parse_matrix(const json& doc, const char* key) {
    if (!doc.contains(key)) throw FormatError(std::string("policy file is missing \"") + key + "\"");
    const json& m = doc.at(key);
    if (!m.is_array() || m.empty())
        throw FormatError(std::string("policy field \"") + key + "\" must be a nonempty array of rows");
    std::vector<std::vector<double>> rows;
    for (const json& r : m) rows.push_back(parse_number_row(r, key));
    return rows;
}

}  // namespace

MaccChannel parse_channel_json(const nlohmann::json& doc, int max_alphabet) {
    if (!doc.is_object()) throw FormatError("channel spec must be a JSON object");
    const int nx1 = require_positive_int(doc, "nx1");
    const int nx2 = require_positive_int(doc, "nx2");
    const int ny = require_positive_int(doc, "ny");
    const int ny1 = require_positive_int(doc, "ny1");
    if (!doc.contains("p")) throw FormatError("channel spec is missing \"p\"");

    const json& p = doc.at("p");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(nx1) * nx2 * ny * ny1);
    if (!p.is_array() || static_cast<int>(p.size()) != nx1)
        throw FormatError("\"p\" must be a 4-level nested array with " + std::to_string(nx1) +
                          " x1 entries");
    for (const json& lvl1 : p) {
        if (!lvl1.is_array() || static_cast<int>(lvl1.size()) != nx2)
            throw FormatError("\"p\" is ragged: expected " + std::to_string(nx2) + " x2 entries");
        for (const json& lvl2 : lvl1) {
            if (!lvl2.is_array() || static_cast<int>(lvl2.size()) != ny)
                throw FormatError("\"p\" is ragged: expected " + std::to_string(ny) + " y entries");
            for (const json& lvl3 : lvl2) {
                if (!lvl3.is_array() || static_cast<int>(lvl3.size()) != ny1)
                    throw FormatError("\"p\" is ragged: expected " + std::to_string(ny1) +
                                      " y1 entries");
                for (const json& v : lvl3) {
                    if (!v.is_number()) throw FormatError("\"p\" holds a non-numeric entry");
                    flat.push_back(v.get<double>());
                }
            }
        }
    }

    if (doc.contains("labels")) {
        const json& labels = doc.at("labels");
        if (!labels.is_object()) throw FormatError("\"labels\" must be an object");
        const std::pair<const char*, int> axes[] = {
            {"x1", nx1}, {"x2", nx2}, {"y", ny}, {"y1", ny1}};
        for (const auto& [key, value] : labels.items()) {
            bool known = false;
            for (const auto& [name, size] : axes) {
                if (key == name) {
                    known = true;
                    if (!value.is_array() || static_cast<int>(value.size()) != size)
                        throw FormatError("labels for \"" + key + "\" must list " +
                                          std::to_string(size) + " strings");
                    for (const json& s : value)
                        if (!s.is_string())
                            throw FormatError("labels for \"" + key + "\" must be strings");
                }
            }
            if (!known) throw FormatError("labels name unknown axis \"" + key + "\"");
        }
    }

    MaccChannel ch = [&] {
        try {
            return MaccChannel(nx1, nx2, ny, ny1, std::move(flat), max_alphabet);
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("channel spec: ") + e.what());
        }
    }();

    const ValidationReport report = validate_channel(ch);
    if (!report.ok) {
        std::string msg = "channel spec is not stochastic:";
        for (const auto& v : report.violations) msg += " " + v.detail + ";";
        throw FormatError(msg);
    }
    return ch;
}

MaccChannel load_channel_json(const std::string& path, int max_alphabet) {
    return parse_channel_json(load_doc(path), max_alphabet);
}

nlohmann::json channel_to_json(const MaccChannel& ch) {
    json p = json::array();
    for (int a = 0; a < ch.nx1(); ++a) {
        json l1 = json::array();
        for (int b = 0; b < ch.nx2(); ++b) {
            json l2 = json::array();
            for (int y = 0; y < ch.ny(); ++y) {
                json l3 = json::array();
                for (int y1 = 0; y1 < ch.ny1(); ++y1) l3.push_back(ch.at(a, b, y, y1));
                l2.push_back(std::move(l3));
            }
            l1.push_back(std::move(l2));
        }
        p.push_back(std::move(l1));
    }
    return json{{"nx1", ch.nx1()}, {"nx2", ch.nx2()}, {"ny", ch.ny()}, {"ny1", ch.ny1()}, {"p", std::move(p)}};
}

AuxInputPolicy parse_aux_policy_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw FormatError("policy file must be a JSON object");
    if (!doc.contains("pU")) throw FormatError("policy file is missing \"pU\"");
    try {
        AuxInputPolicy pol;
        pol.pU = Pmf(parse_number_row(doc.at("pU"), "pU"));
        pol.pVgivenU = CondPmf(parse_matrix(doc, "pVgivenU"));
        pol.pX1givenU = CondPmf(parse_matrix(doc, "pX1givenU"));
        pol.pX2givenV = CondPmf(parse_matrix(doc, "pX2givenV"));
        if (pol.pVgivenU.rows() != pol.pU.size() || pol.pX1givenU.rows() != pol.pU.size())
            throw FormatError("policy rows do not chain: pVgivenU and pX1givenU need |U| rows");
        if (pol.pX2givenV.rows() != pol.pVgivenU.cols())
            throw FormatError("policy rows do not chain: pX2givenV needs |V| rows");
        return pol;
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("policy file: ") + e.what());
    }
}

AuxInputPolicy load_aux_policy_json(const std::string& path) {
    return parse_aux_policy_json(load_doc(path));
}

}  // namespace macc
