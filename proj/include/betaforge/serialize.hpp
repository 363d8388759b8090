#pragma once

#include <string>

#include <json.hpp>

#include "betaforge/plmap.hpp"
#include "betaforge/representability.hpp"
#include "betaforge/treepair.hpp"

namespace betaforge {

using json = nlohmann::json;

// All integers ride as decimal strings so consumers never hit a precision
// ceiling; rationals are "num" or "num/den" strings.

json context_to_json(const BetaContext& ctx);
ContextPtr context_from_json(const json& j);

json field_elem_to_json(const FieldElem& x); // ["num/den", ...] ascending powers
FieldElem field_elem_from_json(const ContextPtr& ctx, const json& j);

json plmap_to_json(const PLMap& f);
PLMap plmap_from_json(const json& j);

json certificate_to_json(const ContextPtr& ctx, const CoeffVector& p, const Certificate& cert);
struct CertificateBundle {
    ContextPtr ctx;
    CoeffVector vector;
    Certificate cert;
};
CertificateBundle certificate_from_json(const json& j);

// Trees ride preorder: the caret's index into the lexicographic shape list
// for a node, "-1" for a leaf.
json treepair_to_json(const TreePair& tp);
TreePair treepair_from_json(const json& j);

json tree_to_json(const Tree& t, const BetaContext& ctx);
Tree tree_from_json(const json& j, const BetaContext& ctx);

// Deterministic DOT rendering: nodes named in preorder, edges labelled and
// stretched by leg length, leaves labelled with their depth.
std::string tree_to_dot(const Tree& t, const std::string& graph_name);
std::string treepair_to_dot(const TreePair& tp);

// Atomically replace `path`: write to a temporary sibling then rename, so a
// failed run never leaves a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace betaforge
