#pragma once

#include <string>
#include <string_view>

#include "dianet/compose.hpp"
#include "dianet/orchestrator.hpp"
#include "dianet/unfolding.hpp"
#include "dianet/verifier.hpp"

namespace dianet {

// Line-based system description:
//
//   # comment
//   system <name>
//   observable: a b c
//   unobservable: u v
//   faults: f
//   component <name>
//     initial <state>
//     trans <src> <action> <dst>
//   end
//
// Validates the alphabet partition, component well-formedness and the
// shared-unobservable prohibition, with line-numbered errors.
SystemSpec parse_system(std::string_view text);
SystemSpec parse_system_file(const std::string& path);

// Inverse of parse_system: parse(render(spec)) == spec.
std::string render_system(const SystemSpec& spec);

// Canonical JSON: sorted keys, no volatile fields, trailing newline.
std::string emit_verdict_json(const Verdict& verdict, const std::string& system,
                              const AlphabetPartition& sigma);
std::string emit_verdict_json(const DistributedReport& report,
                              const AlphabetPartition& sigma);
std::string emit_verdicts_json(const std::vector<Verdict>& verdicts,
                               const std::string& system,
                               const AlphabetPartition& sigma);

// Graphviz exports: places as circles (marked ones carry a token dot),
// transitions as boxes, verifier replica tags as name suffixes, cut-off
// events dashed.
std::string emit_dot(const LabelledNet& net, const AlphabetPartition& sigma);
std::string emit_dot(const VerifierNet& v, const AlphabetPartition& sigma);
std::string emit_dot(const OccurrenceNet& on, const AlphabetPartition& sigma);

}  // namespace dianet
