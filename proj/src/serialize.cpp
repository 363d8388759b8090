#include "betaforge/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "betaforge/errors.hpp"

namespace betaforge {

namespace {

json int_to_json(const BigInt& z) { return z.get_str(); }

BigInt int_from_json(const json& j) {
    if (!j.is_string())
        throw parse_error("expected decimal-string integer, got " + j.dump());
    return parse_integer(j.get<std::string>());
}

std::vector<BigInt> int_vector_from_json(const json& j) {
    if (!j.is_array())
        throw parse_error("expected array of decimal-string integers");
    std::vector<BigInt> out;
    out.reserve(j.size());
    for (const auto& e : j)
        out.push_back(int_from_json(e));
    return out;
}

} // namespace

json context_to_json(const BetaContext& ctx) {
    json coeffs = json::array();
    for (const auto& a : ctx.subdivision().coeffs())
        coeffs.push_back(int_to_json(a));
    return json{{"coeffs", coeffs}};
}

ContextPtr context_from_json(const json& j) {
    if (!j.contains("coeffs"))
        throw parse_error("context needs a 'coeffs' array");
    return BetaContext::create(int_vector_from_json(j.at("coeffs")));
}

json field_elem_to_json(const FieldElem& x) {
    json out = json::array();
    for (const auto& c : x.coeffs())
        out.push_back(format_rational(c));
    return out;
}

FieldElem field_elem_from_json(const ContextPtr& ctx, const json& j) {
    if (!j.is_array())
        throw parse_error("field element must be an array of rational strings");
    std::vector<BigRational> coeffs;
    coeffs.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_string())
            throw parse_error("field coefficient must be a rational string");
        coeffs.push_back(parse_rational(e.get<std::string>()));
    }
    if (coeffs.size() > ctx->degree())
        throw parse_error("field element longer than the context degree");
    coeffs.resize(ctx->degree(), BigRational(0));
    return FieldElem(ctx, std::move(coeffs));
}

json plmap_to_json(const PLMap& f) {
    json verts = json::array();
    for (const auto& [x, y] : f.vertices())
        verts.push_back(json::array({field_elem_to_json(x), field_elem_to_json(y)}));
    return json{{"context", context_to_json(*f.ctx())}, {"vertices", verts}};
}

PLMap plmap_from_json(const json& j) {
    ContextPtr ctx = context_from_json(j.at("context"));
    std::vector<PLMap::Vertex> verts;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_array() || v.size() != 2)
            throw parse_error("vertex must be an [x, y] pair");
        verts.emplace_back(field_elem_from_json(ctx, v[0]), field_elem_from_json(ctx, v[1]));
    }
    return PLMap::from_vertices(ctx, std::move(verts));
}

json certificate_to_json(const ContextPtr& ctx, const CoeffVector& p, const Certificate& cert) {
    json out;
    out["context"] = context_to_json(*ctx);
    json vec = json::array();
    for (const auto& e : p)
        vec.push_back(int_to_json(e));
    out["vector"] = vec;
    switch (cert.kind) {
    case Certificate::Kind::witness: {
        out["kind"] = "witness";
        out["n"] = std::to_string(cert.witness_n);
        json w = json::array();
        for (const auto& e : cert.witness_vector)
            w.push_back(int_to_json(e));
        out["witness"] = w;
        break;
    }
    case Certificate::Kind::impossible: {
        out["kind"] = "impossible";
        out["split"] = std::to_string(cert.split);
        out["cycle_start"] = std::to_string(cert.cycle_start);
        out["cycle_length"] = std::to_string(cert.cycle_length);
        auto supports = [](const std::vector<std::vector<uint8_t>>& rows) {
            json arr = json::array();
            for (const auto& row : rows) {
                json r = json::array();
                for (uint8_t b : row)
                    r.push_back(static_cast<bool>(b));
                arr.push_back(r);
            }
            return arr;
        };
        out["pos_support"] = supports(cert.pos_support);
        out["neg_support"] = supports(cert.neg_support);
        break;
    }
    case Certificate::Kind::inconclusive:
        out["kind"] = "inconclusive";
        out["bound"] = std::to_string(cert.bound);
        break;
    }
    return out;
}

CertificateBundle certificate_from_json(const json& j) {
    CertificateBundle b{context_from_json(j.at("context")), int_vector_from_json(j.at("vector")),
                        {}};
    std::string kind = j.at("kind").get<std::string>();
    auto parse_count = [&](const char* key) {
        return std::stoul(j.at(key).get<std::string>());
    };
    if (kind == "witness") {
        b.cert.kind = Certificate::Kind::witness;
        b.cert.witness_n = parse_count("n");
        b.cert.witness_vector = int_vector_from_json(j.at("witness"));
    } else if (kind == "impossible") {
        b.cert.kind = Certificate::Kind::impossible;
        b.cert.split = parse_count("split");
        b.cert.cycle_start = parse_count("cycle_start");
        b.cert.cycle_length = parse_count("cycle_length");
        auto supports = [](const json& arr) {
            std::vector<std::vector<uint8_t>> rows;
            for (const auto& r : arr) {
                std::vector<uint8_t> row;
                for (const auto& e : r)
                    row.push_back(e.get<bool>() ? 1 : 0);
                rows.push_back(std::move(row));
            }
            return rows;
        };
        b.cert.pos_support = supports(j.at("pos_support"));
        b.cert.neg_support = supports(j.at("neg_support"));
    } else if (kind == "inconclusive") {
        b.cert.kind = Certificate::Kind::inconclusive;
        b.cert.bound = parse_count("bound");
    } else {
        throw parse_error("unknown certificate kind '" + kind + "'");
    }
    return b;
}

namespace {

size_t shape_index(const std::vector<CaretShape>& shapes, const CaretShape& s) {
    for (size_t i = 0; i < shapes.size(); ++i)
        if (shapes[i] == s)
            return i;
    throw parse_error("caret shape " + s.to_string() + " not in context shape set");
}

void tree_preorder(const Tree& t, const std::vector<CaretShape>& shapes, json& out) {
    if (t.is_leaf()) {
        out.push_back("-1");
        return;
    }
    out.push_back(std::to_string(shape_index(shapes, t.caret())));
    for (const auto& c : t.children())
        tree_preorder(c, shapes, out);
}

Tree tree_from_preorder(const json& arr, const std::vector<CaretShape>& shapes, size_t& pos) {
    if (pos >= arr.size())
        throw parse_error("truncated preorder tree");
    long code = std::stol(arr[pos++].get<std::string>());
    if (code == -1)
        return Tree::leaf();
    if (code < 0 || static_cast<size_t>(code) >= shapes.size())
        throw parse_error("caret index out of range: " + std::to_string(code));
    const CaretShape& shape = shapes[static_cast<size_t>(code)];
    std::vector<Tree> children;
    children.reserve(shape.legs.size());
    for (size_t i = 0; i < shape.legs.size(); ++i)
        children.push_back(tree_from_preorder(arr, shapes, pos));
    return Tree::node(shape, std::move(children));
}

} // namespace

json tree_to_json(const Tree& t, const BetaContext& ctx) {
    std::vector<CaretShape> shapes = enumerate_carets(ctx);
    json arr = json::array();
    tree_preorder(t, shapes, arr);
    return arr;
}

Tree tree_from_json(const json& j, const BetaContext& ctx) {
    std::vector<CaretShape> shapes = enumerate_carets(ctx);
    size_t pos = 0;
    Tree t = tree_from_preorder(j, shapes, pos);
    if (pos != j.size())
        throw parse_error("trailing entries after preorder tree");
    return t;
}

json treepair_to_json(const TreePair& tp) {
    return json{{"context", context_to_json(*tp.ctx)},
                {"left", tree_to_json(tp.left, *tp.ctx)},
                {"right", tree_to_json(tp.right, *tp.ctx)}};
}

TreePair treepair_from_json(const json& j) {
    ContextPtr ctx = context_from_json(j.at("context"));
    return TreePair(ctx, tree_from_json(j.at("left"), *ctx),
                    tree_from_json(j.at("right"), *ctx));
}

namespace {

void dot_nodes(const Tree& t, const std::string& prefix, size_t& counter, unsigned depth,
               std::ostringstream& out) {
    size_t self = counter++;
    if (t.is_leaf()) {
        out << "  " << prefix << self << " [shape=plaintext, label=\"" << depth << "\"];\n";
        return;
    }
    out << "  " << prefix << self << " [shape=point];\n";
    for (size_t i = 0; i < t.children().size(); ++i) {
        unsigned leg = t.caret().legs[i];
        size_t child = counter;
        out << "  " << prefix << self << " -> " << prefix << child << " [label=\"" << leg
            << "\", minlen=" << leg << "];\n";
        dot_nodes(t.children()[i], prefix, counter, depth + leg, out);
    }
}

} // namespace

std::string tree_to_dot(const Tree& t, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << graph_name << " {\n  ordering=out;\n";
    size_t counter = 0;
    dot_nodes(t, "n", counter, 0, out);
    out << "}\n";
    return out.str();
}

std::string treepair_to_dot(const TreePair& tp) {
    std::ostringstream out;
    out << "digraph treepair {\n  ordering=out;\n";
    out << "  subgraph cluster_left {\n    label=\"domain tree\";\n";
    size_t counter = 0;
    std::ostringstream left;
    dot_nodes(tp.left, "l", counter, 0, left);
    out << left.str() << "  }\n";
    out << "  subgraph cluster_right {\n    label=\"codomain tree\";\n";
    counter = 0;
    std::ostringstream right;
    dot_nodes(tp.right, "r", counter, 0, right);
    out << right.str() << "  }\n";
    out << "}\n";
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out.flush())
            throw error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace betaforge
