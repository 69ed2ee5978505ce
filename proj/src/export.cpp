#include "tabula/export.hpp"

#include "tabula/parser.hpp"

namespace tabula {

namespace {

nlohmann::ordered_json rendered_list(const SignedFormulaList& list) {
    auto array = nlohmann::ordered_json::array();
    for (const auto& sf : list) array.push_back(render(sf));
    return array;
}

std::string join_rendered(const SignedFormulaList& list) {
    std::string out = "[";
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i > 0) out += ", ";
        out += render(list[i]);
    }
    out += "]";
    return out;
}

// Leaf annotation: a cross when closed, the dictated model when open and
// completed, nothing while composites remain.
std::string leaf_note(const SignedFormulaList& full_set) {
    if (has_opposite_literals(full_set)) return "✕";
    if (!is_literal_set(full_set)) return "";
    ModelSet ms = lmods(full_set);
    return ms.members().front().to_string();
}

std::string dot_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

nlohmann::ordered_json to_json(const TreeOfLists& tree) {
    nlohmann::ordered_json out;
    out["rule"] = rule_label(tree.rule);
    if (tree.used) {
        out["used"] = render(*tree.used);
    } else {
        out["used"] = nullptr;
    }
    out["content"] = rendered_list(tree.content);
    auto children = nlohmann::ordered_json::array();
    for (const auto& child : tree.children) children.push_back(to_json(child));
    out["children"] = std::move(children);
    return out;
}

nlohmann::ordered_json to_json(const Tableau& t) {
    nlohmann::ordered_json out;
    out["rule"] = t.used ? rule_label(rule_for(*t.used)) : rule_label(Rule::Lit);
    if (t.used) {
        out["used"] = render(*t.used);
    } else {
        out["used"] = nullptr;
    }
    out["explicit"] = rendered_list(t.explicit_set);
    auto children = nlohmann::ordered_json::array();
    for (const auto& child : t.children) children.push_back(to_json(child));
    out["children"] = std::move(children);
    return out;
}

namespace {

void dot_list_node(const TreeOfLists& node, std::string& out, std::size_t& counter) {
    std::size_t id = counter++;
    std::string label;
    for (const auto& sf : node.content) {
        if (!label.empty()) label += "\\n";
        label += dot_escape(render(sf));
    }
    if (node.children.empty()) {
        std::string note = leaf_note(node.content);
        if (!note.empty()) {
            if (!label.empty()) label += "\\n";
            label += dot_escape(note);
        }
    }
    out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
    for (const auto& child : node.children) {
        std::size_t child_id = counter;
        dot_list_node(child, out, counter);
        out += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) + ";\n";
    }
}

void dot_tableau_node(const Tableau& node, const SignedFormulaList& implicit,
                      std::string& out, std::size_t& counter) {
    std::size_t id = counter++;
    std::string label;
    for (const auto& sf : node.explicit_set) {
        if (!label.empty()) label += "\\n";
        label += dot_escape(render(sf));
    }
    if (node.children.empty()) {
        std::string note = leaf_note(implicit);
        if (!note.empty()) {
            if (!label.empty()) label += "\\n";
            label += dot_escape(note);
        }
    }
    out += "  n" + std::to_string(id) + " [label=\"" + label + "\"];\n";
    if (node.children.empty() || !node.used) return;
    SignedFormulaList remainder = split(implicit, *node.used);
    for (const auto& child : node.children) {
        std::size_t child_id = counter;
        dot_tableau_node(child, list_union(remainder, child.explicit_set), out, counter);
        out += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) + ";\n";
    }
}

std::string dot_preamble() {
    return "digraph trace {\n  ordering=out;\n  node [shape=box, fontname=\"monospace\"];\n";
}

} // namespace

std::string to_dot(const TreeOfLists& tree) {
    std::string out = dot_preamble();
    std::size_t counter = 0;
    dot_list_node(tree, out, counter);
    out += "}\n";
    return out;
}

std::string to_dot(const Tableau& t) {
    std::string out = dot_preamble();
    std::size_t counter = 0;
    dot_tableau_node(t, t.explicit_set, out, counter);
    out += "}\n";
    return out;
}

namespace {

std::string ascii_status(const SignedFormulaList& full_set) {
    if (has_opposite_literals(full_set)) return "closed";
    if (!is_literal_set(full_set)) return "incomplete";
    return "open " + lmods(full_set).members().front().to_string();
}

void ascii_list_node(const TreeOfLists& node, const std::string& prefix, bool last,
                     bool root, std::string& out) {
    std::string line;
    if (!root) line = prefix + (last ? "`-- " : "|-- ");
    line += join_rendered(node.content);
    if (node.used) {
        line += "  (";
        line += rule_label(node.rule);
        line += " on " + render(*node.used) + ")";
    } else {
        line += "  " + ascii_status(node.content);
    }
    out += line + "\n";
    std::string child_prefix = root ? "" : prefix + (last ? "    " : "|   ");
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        ascii_list_node(node.children[i], child_prefix, i + 1 == node.children.size(),
                        false, out);
    }
}

void ascii_tableau_node(const Tableau& node, const SignedFormulaList& implicit,
                        const std::string& prefix, bool last, bool root, std::string& out) {
    std::string line;
    if (!root) line = prefix + (last ? "`-- " : "|-- ");
    line += join_rendered(node.explicit_set);
    if (node.used) {
        line += "  (";
        line += rule_label(rule_for(*node.used));
        line += " on " + render(*node.used) + ")";
    } else {
        line += "  " + ascii_status(implicit);
    }
    out += line + "\n";
    if (node.children.empty() || !node.used) return;
    std::string child_prefix = root ? "" : prefix + (last ? "    " : "|   ");
    SignedFormulaList remainder = split(implicit, *node.used);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        ascii_tableau_node(node.children[i], list_union(remainder, node.children[i].explicit_set),
                           child_prefix, i + 1 == node.children.size(), false, out);
    }
}

} // namespace

std::string to_ascii(const TreeOfLists& tree) {
    std::string out;
    ascii_list_node(tree, "", true, true, out);
    return out;
}

std::string to_ascii(const Tableau& t) {
    std::string out;
    ascii_tableau_node(t, t.explicit_set, "", true, true, out);
    return out;
}

} // namespace tabula
