#include "hdb/context_doc.hpp"

#include <fstream>
#include <stdexcept>

namespace hdb {

namespace {

const char* role_name(VarRole r) {
    switch (r) {
        case VarRole::base: return "base";
        case VarRole::momentum: return "momentum";
        case VarRole::antimomentum: return "antimomentum";
        case VarRole::aux: return "aux";
    }
    return "base";
}

VarRole role_from_name(const std::string& s) {
    if (s == "base") return VarRole::base;
    if (s == "momentum") return VarRole::momentum;
    if (s == "antimomentum") return VarRole::antimomentum;
    if (s == "aux") return VarRole::aux;
    throw std::invalid_argument("unknown variable role: " + s);
}

Parity parity_from_name(const std::string& s) {
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    throw std::invalid_argument("unknown parity: " + s);
}

}  // namespace

ContextDoc context_doc_from_json(const nlohmann::json& j) {
    ContextDoc doc;
    auto kind = kind_from_name(j.at("kind").get<std::string>());
    if (!kind)
        throw std::invalid_argument("unknown context kind: " +
                                    j.at("kind").get<std::string>());
    doc.kind = *kind;
    for (const auto& v : j.at("variables")) {
        ContextDoc::Var var;
        var.name = v.at("name").get<std::string>();
        var.parity = parity_from_name(v.at("parity").get<std::string>());
        var.role = v.contains("role") ? role_from_name(v.at("role").get<std::string>())
                                      : VarRole::base;
        doc.variables.push_back(std::move(var));
    }
    if (j.contains("odd_parameters"))
        for (const auto& n : j.at("odd_parameters"))
            doc.odd_parameters.push_back(n.get<std::string>());
    if (j.contains("caps")) {
        const auto& c = j.at("caps");
        if (c.contains("max-base-degree")) doc.caps.max_base_degree = c.at("max-base-degree");
        if (c.contains("max-operator-order"))
            doc.caps.max_operator_order = c.at("max-operator-order");
        if (c.contains("arity-cap")) doc.caps.arity_cap = c.at("arity-cap");
    }
    return doc;
}

nlohmann::json context_doc_to_json(const ContextDoc& doc) {
    nlohmann::json j;
    j["kind"] = kind_name(doc.kind);
    j["variables"] = nlohmann::json::array();
    for (const auto& v : doc.variables)
        j["variables"].push_back({{"name", v.name},
                                  {"parity", parity_name(v.parity)},
                                  {"role", role_name(v.role)}});
    j["odd_parameters"] = doc.odd_parameters;
    j["caps"] = {{"max-base-degree", doc.caps.max_base_degree},
                 {"max-operator-order", doc.caps.max_operator_order},
                 {"arity-cap", doc.caps.arity_cap}};
    return j;
}

ContextDoc load_context_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open context file: " + path);
    nlohmann::json j;
    in >> j;
    return context_doc_from_json(j);
}

SignaturePtr signature_from_doc(const ContextDoc& doc) {
    auto sig = std::make_shared<Signature>();
    for (const auto& v : doc.variables) {
        switch (v.role) {
            case VarRole::base:
                sig->declare_coordinate(v.name, v.parity);
                break;
            case VarRole::aux:
                sig->declare_aux(v.name, v.parity);
                break;
            case VarRole::momentum:
            case VarRole::antimomentum: {
                // implicitly declared with their base variable; only verify
                auto id = sig->find(v.name);
                if (!id || sig->role(*id) != v.role || sig->parity(*id) != v.parity)
                    throw std::invalid_argument(
                        "conjugate variable does not match its base declaration: " + v.name);
                break;
            }
        }
    }
    for (const auto& n : doc.odd_parameters) sig->declare_aux(n, Parity::odd);
    return sig;
}

ContextPtr context_from_doc(const ContextDoc& doc) {
    return make_context(doc.kind, signature_from_doc(doc), doc.caps);
}

ContextDoc normalize_doc(const ContextDoc& doc) {
    SignaturePtr sig = signature_from_doc(doc);
    ContextDoc out;
    out.kind = doc.kind;
    out.caps = doc.caps;
    for (VarId i = 0; i < sig->size(); ++i) {
        const VarDecl& v = sig->var(i);
        if (v.role == VarRole::aux && is_odd(v.parity)) {
            out.odd_parameters.push_back(v.name);
            continue;
        }
        out.variables.push_back({v.name, v.parity, v.role});
    }
    return out;
}

}  // namespace hdb
