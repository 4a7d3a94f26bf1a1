#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dhstab/kvdoc.hpp"
#include "dhstab/textio.hpp"

namespace dhstab {

/// Machine-readable record of one CLI run. Paired string fields are
/// role/path for inputs and artifacts, name/value for config.
struct RunReport {
    std::string command;
    std::string status = "ok";
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::pair<std::string, std::string>> artifacts;
    std::optional<double> relative_error;
    std::optional<double> stability_margin;
    std::optional<int> iterations;
    std::optional<double> wall_time;
    std::vector<double> objective_trajectory;
};

inline std::string write_report(const RunReport& r) {
    KvNode root;
    root.key = "report";
    root.block = true;
    auto scalar = [&](const char* key, std::string value) {
        KvNode n;
        n.key = key;
        n.values = {std::move(value)};
        root.children.push_back(std::move(n));
    };
    auto pair_entries = [&](const char* key, const std::vector<std::pair<std::string, std::string>>& items) {
        for (const auto& [name, value] : items) {
            KvNode n;
            n.key = key;
            n.values = {name, value};
            root.children.push_back(std::move(n));
        }
    };
    scalar("command", r.command);
    scalar("status", r.status);
    pair_entries("input", r.inputs);
    pair_entries("config", r.config);
    if (r.relative_error)
        scalar("relative_error", format_double(*r.relative_error));
    if (r.stability_margin)
        scalar("stability_margin", format_double(*r.stability_margin));
    if (r.iterations)
        scalar("iterations", std::to_string(*r.iterations));
    if (r.wall_time)
        scalar("wall_time", format_double(*r.wall_time));
    if (!r.objective_trajectory.empty()) {
        KvNode n;
        n.key = "objective_trajectory";
        for (double v : r.objective_trajectory)
            n.values.push_back(format_double(v));
        root.children.push_back(std::move(n));
    }
    pair_entries("artifact", r.artifacts);
    return write_kvdoc({root});
}

inline RunReport parse_report(const std::string& text) {
    KvDoc doc = parse_kvdoc(text);
    const KvNode& root = kv_need(doc, "report", "report");
    if (!root.block)
        throw ParseError("report: 'report' must open a block", root.pos);
    RunReport r;
    for (const KvNode& n : root.children) {
        if (n.key == "command") {
            r.command = kv_scalar(n);
        } else if (n.key == "status") {
            r.status = kv_scalar(n);
        } else if (n.key == "input" || n.key == "config" || n.key == "artifact") {
            if (n.values.size() != 2)
                throw ParseError("report: '" + n.key + "' expects two values", n.pos);
            auto& list = n.key == "input" ? r.inputs : n.key == "config" ? r.config : r.artifacts;
            list.emplace_back(n.values[0], n.values[1]);
        } else if (n.key == "relative_error") {
            r.relative_error = kv_double(n);
        } else if (n.key == "stability_margin") {
            r.stability_margin = kv_double(n);
        } else if (n.key == "iterations") {
            r.iterations = static_cast<int>(kv_double(n));
        } else if (n.key == "wall_time") {
            r.wall_time = kv_double(n);
        } else if (n.key == "objective_trajectory") {
            for (const std::string& tok : n.values)
                r.objective_trajectory.push_back(parse_double_token(tok, n.pos));
        } else {
            throw ParseError("report: unknown entry '" + n.key + "'", n.pos);
        }
    }
    return r;
}

} // namespace dhstab
