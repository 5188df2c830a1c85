#include "pagelab/sequence.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace pagelab {

RequestSequence::RequestSequence(std::vector<PageId> r, std::vector<VertexId> w)
    : requests(std::move(r)), walk(std::move(w))
{
    if (walk->size() != requests.size()) {
        throw InputError("walk length " + std::to_string(walk->size()) +
                         " does not match request count " +
                         std::to_string(requests.size()));
    }
}

std::size_t RequestSequence::distinct_count() const
{
    return std::set<PageId>(requests.begin(), requests.end()).size();
}

void write_sequence_text(std::ostream& out, const RequestSequence& seq)
{
    for (PageId p : seq.requests) {
        out << p << '\n';
    }
}

RequestSequence read_sequence_text(std::istream& in)
{
    RequestSequence seq;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) {
            continue;
        }
        std::string extra;
        if (ls >> extra || tok.find_first_not_of("0123456789") != std::string::npos) {
            throw InputError("line " + std::to_string(lineno) + ": expected one decimal page id");
        }
        try {
            seq.requests.push_back(std::stoull(tok));
        } catch (const std::out_of_range&) {
            throw InputError("line " + std::to_string(lineno) + ": page id out of range");
        }
    }
    return seq;
}

nlohmann::json sequence_to_json(const RequestSequence& seq)
{
    nlohmann::json j;
    j["requests"] = seq.requests;
    if (seq.walk) {
        j["walk"] = *seq.walk;
    }
    return j;
}

RequestSequence sequence_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("requests")) {
        throw InputError("sequence JSON needs a \"requests\" array");
    }
    for (const auto& [key, _] : j.items()) {
        if (key != "requests" && key != "walk") {
            throw InputError("unknown key in sequence JSON: " + key);
        }
    }
    auto requests = j.at("requests").get<std::vector<PageId>>();
    if (j.contains("walk")) {
        return RequestSequence(std::move(requests), j.at("walk").get<std::vector<VertexId>>());
    }
    return RequestSequence(std::move(requests));
}

void write_walk_text(std::ostream& out, const std::vector<VertexId>& walk)
{
    for (VertexId v : walk) {
        out << v << '\n';
    }
}

RequestSequence load_sequence_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open sequence file " + path);
    }
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw InputError(path + ": " + e.what());
        }
        return sequence_from_json(j);
    }
    return read_sequence_text(in);
}

} // namespace pagelab
