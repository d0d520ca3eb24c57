#ifndef DIOPH_IO_HPP
#define DIOPH_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "dioph/cubic.hpp"
#include "dioph/exponents.hpp"
#include "dioph/profile.hpp"
#include "dioph/segments.hpp"

namespace dioph {

using json = nlohmann::ordered_json;

// Floats in artifacts are printed with 12 significant digits so repeated
// runs produce byte-identical files.
std::string format_double(double v);

json candidate_set_to_json(const CandidateSet& set);
std::shared_ptr<CandidateSet> candidate_set_from_json(const json& j);

json profile_header_json(const MinimaProfile& prof);
// JSON header line followed by a CSV block (q, L_1.., witness ids).
void write_profile_file(const MinimaProfile& prof, const std::string& path);
// One (q, L_j) series file per level, for external plotting.
void write_plot_series(const MinimaProfile& prof, const std::string& base_path);

json report_to_json(const ExponentReport& rep);
json segment_report_to_json(const SegmentReport& rep);
std::string claims_to_csv(const std::vector<ClaimRow>& rows);
json quadratic_sequence_to_json(const QuadraticSequence& seq);
json cubic_witnesses_to_json(const std::vector<CubicWitness>& ws);
std::string cubic_summary_csv(const std::vector<CubicWitness>& ws);

void write_text_atomic(const std::string& path, const std::string& content);

// Candidate cache keyed by the full generation key; atomic writes.
class CandidateCache {
public:
    explicit CandidateCache(std::string dir) : dir_(std::move(dir)) {}
    std::shared_ptr<CandidateSet> load(const std::string& key) const;
    void store(const std::string& key, const CandidateSet& set) const;
    std::string path_for(const std::string& key) const;

private:
    std::string dir_;
};

// Stable 64-bit FNV-1a hash used for cache file names.
uint64_t fnv1a(const std::string& s);

} // namespace dioph

#endif
