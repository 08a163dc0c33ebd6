// Copyright (c) 2026 The FPLE developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "fple/netsim.hpp"

#include <json.hpp>

#include <sstream>

namespace fple {

std::string SimReport::to_json() const
{
    nlohmann::ordered_json doc;
    doc["seed"] = seed;
    doc["horizon"] = horizon;
    nlohmann::ordered_json nodes_json = nlohmann::ordered_json::array();
    for (const NodeSummary& s : nodes) {
        nodes_json.push_back({{"id", s.id},
                              {"tip", s.tip.to_hex()},
                              {"height", s.height},
                              {"work", s.work},
                              {"erased", s.erased},
                              {"blocks_mined", s.blocks_mined},
                              {"blocks_orphaned", s.blocks_orphaned}});
    }
    doc["nodes"] = std::move(nodes_json);
    doc["tip_agreement"] = tip_agreement;
    nlohmann::ordered_json forks_json = nlohmann::ordered_json::array();
    for (const ForkEvent& f : forks) forks_json.push_back({{"node", f.node}, {"tick", f.tick}, {"depth", f.depth}});
    doc["forks"] = std::move(forks_json);
    nlohmann::ordered_json rogue_json = nlohmann::ordered_json::array();
    for (const RogueOutcome& o : rogue) {
        nlohmann::ordered_json intervals = nlohmann::ordered_json::array();
        for (const AcceptanceInterval& i : o.intervals) {
            nlohmann::ordered_json to = i.to ? nlohmann::ordered_json(*i.to) : nlohmann::ordered_json(nullptr);
            intervals.push_back({{"node", i.node}, {"from", i.from}, {"to", to}});
        }
        rogue_json.push_back({{"txid", o.txid.to_hex()},
                              {"outcome", rogue_leaf_name(o.leaf)},
                              {"depth", o.depth},
                              {"mined", o.mined},
                              {"acceptance_intervals", std::move(intervals)}});
    }
    doc["rogue_outcomes"] = std::move(rogue_json);
    doc["events_processed"] = events_processed;
    doc["log_lines"] = log_lines;
    doc["log_digest"] = log_digest.to_hex();
    return doc.dump(2) + "\n";
}

std::string SimReport::to_text() const
{
    std::ostringstream out;
    out << "seed " << seed << ", horizon " << horizon << "\n\n";
    for (const NodeSummary& s : nodes) {
        out << "node " << s.id << ": height " << s.height << " work " << s.work << " tip " << s.tip.to_hex()
            << (s.erased ? " (erased)" : "") << ", mined " << s.blocks_mined << ", orphaned " << s.blocks_orphaned
            << "\n";
    }
    bool agree = true;
    for (const auto& row : tip_agreement) {
        for (bool b : row) agree = agree && b;
    }
    out << "\nall tips agree: " << (agree ? "yes" : "no") << "\n";
    out << "reorgs: " << forks.size() << "\n";
    for (const ForkEvent& f : forks) out << "  node " << f.node << " tick " << f.tick << " depth " << f.depth << "\n";
    for (const RogueOutcome& o : rogue) {
        out << "\nrogue spend " << o.txid.to_hex() << "\n  outcome: " << rogue_leaf_name(o.leaf);
        if (o.leaf == RogueLeaf::AcceptedByErasingMinorityThenReorged) out << " (depth " << o.depth << ")";
        out << "\n  mined: " << (o.mined ? "yes" : "no") << "\n";
        for (const AcceptanceInterval& i : o.intervals) {
            out << "  accepted by node " << i.node << " from tick " << i.from << " to "
                << (i.to ? std::to_string(*i.to) : std::string("horizon")) << "\n";
        }
    }
    out << "\nevents processed " << events_processed << ", log lines " << log_lines << ", digest "
        << log_digest.to_hex() << "\n";
    return out.str();
}

} // namespace fple
