#ifndef HDB_CONTEXT_DOC_HPP
#define HDB_CONTEXT_DOC_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "hdb/context.hpp"

namespace hdb {

// On-disk description of a context: kind, variables, caps. Base variables
// implicitly declare their momentum p_<name> and antimomentum xs_<name>;
// explicit momentum/antimomentum entries are accepted but must match.
struct ContextDoc {
    struct Var {
        std::string name;
        Parity parity = Parity::even;
        VarRole role = VarRole::base;
        bool operator==(const Var&) const = default;
    };

    ContextKind kind = ContextKind::ops;
    std::vector<Var> variables;
    std::vector<std::string> odd_parameters;
    DegreeCaps caps;

    bool operator==(const ContextDoc&) const = default;
};

ContextDoc context_doc_from_json(const nlohmann::json& j);
nlohmann::json context_doc_to_json(const ContextDoc& doc);
ContextDoc load_context_doc(const std::string& path);

SignaturePtr signature_from_doc(const ContextDoc& doc);
ContextPtr context_from_doc(const ContextDoc& doc);

// Canonical form: variables expanded to the full signature order with aux
// entries for even parameters, odd parameters listed separately. Normalizing
// twice is the identity, so serialized normalized docs roundtrip
// byte-identically.
ContextDoc normalize_doc(const ContextDoc& doc);

}  // namespace hdb

#endif
