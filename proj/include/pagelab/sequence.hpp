#ifndef PAGELAB_SEQUENCE_HPP
#define PAGELAB_SEQUENCE_HPP

#include "pagelab/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pagelab {

/*
 * An ordered list of page requests. When the sequence was generated by a
 * walk on an extended access graph, the walk is kept alongside so that
 * graph-aware policies (MAXFAR) and validators can use it.
 */
struct RequestSequence {
    std::vector<PageId> requests;
    std::optional<std::vector<VertexId>> walk;

    RequestSequence() = default;
    explicit RequestSequence(std::vector<PageId> r) : requests(std::move(r)) {}
    RequestSequence(std::vector<PageId> r, std::vector<VertexId> w);

    std::size_t size() const { return requests.size(); }
    bool empty() const { return requests.empty(); }
    PageId operator[](std::size_t i) const { return requests[i]; }

    /// Number of distinct pages requested.
    std::size_t distinct_count() const;

    bool operator==(const RequestSequence&) const = default;
};

// Newline-delimited decimal page ids. Blank lines and '#' comments are skipped.
void write_sequence_text(std::ostream& out, const RequestSequence& seq);
RequestSequence read_sequence_text(std::istream& in);

// {"requests": [...], "walk": [...]}; walk is optional.
nlohmann::json sequence_to_json(const RequestSequence& seq);
RequestSequence sequence_from_json(const nlohmann::json& j);

void write_walk_text(std::ostream& out, const std::vector<VertexId>& walk);

RequestSequence load_sequence_file(const std::string& path);

} // namespace pagelab

#endif
