// Copyright 2026 The snaplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snaplab/guest/workload.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "snaplab/common/error.hpp"
#include "snaplab/common/hash.hpp"

namespace snaplab::guest {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedDocument, what);
}

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

const ordered_json& field(const ordered_json& obj, const char* key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(fmt::format("{}: missing field '{}'", where, key));
  return *it;
}

std::uint64_t u64_field(const ordered_json& obj, const char* key,
                        const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    malformed(fmt::format("{}: field '{}' must be a non-negative integer", where, key));
  }
  return v.get<std::uint64_t>();
}

std::string string_field(const ordered_json& obj, const char* key,
                         const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) malformed(fmt::format("{}: field '{}' must be a string", where, key));
  return v.get<std::string>();
}

PageRange range_fields(const ordered_json& obj, const std::string& where) {
  return {u64_field(obj, "start_page", where), u64_field(obj, "page_count", where)};
}

Step parse_step(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) malformed(where + ": step must be an object");
  const std::string type = string_field(j, "type", where);
  if (type == "write") {
    return WriteStep{range_fields(j, where), u64_field(j, "step_seed", where)};
  }
  if (type == "read") return ReadStep{range_fields(j, where)};
  if (type == "compute") return ComputeStep{u64_field(j, "duration_us", where)};
  if (type == "mount_appfs") return MountAppFsStep{};
  malformed(fmt::format("{}: unknown step type '{}'", where, type));
}

ordered_json step_to_json(const Step& step) {
  return std::visit(
      [](const auto& s) -> ordered_json {
        using T = std::decay_t<decltype(s)>;
        ordered_json j;
        if constexpr (std::is_same_v<T, WriteStep>) {
          j["type"] = "write";
          j["start_page"] = s.range.start;
          j["page_count"] = s.range.count;
          j["step_seed"] = s.step_seed;
        } else if constexpr (std::is_same_v<T, ReadStep>) {
          j["type"] = "read";
          j["start_page"] = s.range.start;
          j["page_count"] = s.range.count;
        } else if constexpr (std::is_same_v<T, ComputeStep>) {
          j["type"] = "compute";
          j["duration_us"] = s.duration_us;
        } else {
          j["type"] = "mount_appfs";
        }
        return j;
      },
      step);
}

std::size_t first_phase_at_least(const WorkloadSpec& spec, Provenance p) {
  for (std::size_t i = 0; i < spec.phases.size(); ++i) {
    if (spec.phases[i].provenance >= p) return i;
  }
  return spec.phases.size();
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kKernel: return "kernel";
    case Provenance::kOsInit: return "os_init";
    case Provenance::kRuntime: return "runtime";
    case Provenance::kFunctionInit: return "function_init";
    case Provenance::kExecution: return "execution";
  }
  return "unknown";
}

std::optional<Provenance> parse_provenance(std::string_view name) {
  for (auto p : {Provenance::kKernel, Provenance::kOsInit, Provenance::kRuntime,
                 Provenance::kFunctionInit, Provenance::kExecution}) {
    if (provenance_name(p) == name) return p;
  }
  return std::nullopt;
}

PhaseRange WorkloadSpec::base_phases() const {
  return {0, first_phase_at_least(*this, Provenance::kFunctionInit)};
}

PhaseRange WorkloadSpec::function_init_phases() const {
  return {first_phase_at_least(*this, Provenance::kFunctionInit),
          first_phase_at_least(*this, Provenance::kExecution)};
}

PhaseRange WorkloadSpec::execution_phases() const {
  return {first_phase_at_least(*this, Provenance::kExecution), phases.size()};
}

std::uint64_t WorkloadSpec::compute_us(PhaseRange range) const {
  std::uint64_t total = 0;
  for (std::size_t i = range.begin; i < range.end && i < phases.size(); ++i) {
    for (const Step& s : phases[i].steps) {
      if (const auto* c = std::get_if<ComputeStep>(&s)) total += c->duration_us;
    }
  }
  return total;
}

void validate_workload(const WorkloadSpec& spec) {
  if (spec.name.empty()) violation("workload name is empty");
  if (spec.memory_pages == 0) violation("memory_pages must be positive");
  if (spec.page_size == 0 || (spec.page_size & (spec.page_size - 1)) != 0) {
    violation(fmt::format("page_size {} is not a power of two", spec.page_size));
  }
  if (spec.appfs_pages) {
    if (spec.appfs_pages->count == 0 || spec.appfs_pages->end() > spec.memory_pages) {
      violation("appfs_pages range is empty or outside memory");
    }
  }
  bool mounted = false;
  for (std::size_t pi = 0; pi < spec.phases.size(); ++pi) {
    const Phase& phase = spec.phases[pi];
    if (pi > 0 && phase.provenance < spec.phases[pi - 1].provenance) {
      violation(fmt::format("phase {} '{}': provenance {} follows {}", pi, phase.name,
                            provenance_name(phase.provenance),
                            provenance_name(spec.phases[pi - 1].provenance)));
    }
    for (std::size_t si = 0; si < phase.steps.size(); ++si) {
      const Step& step = phase.steps[si];
      const auto where = [&] {
        return fmt::format("phase {} '{}' step {}", pi, phase.name, si);
      };
      if (std::holds_alternative<MountAppFsStep>(step)) {
        if (phase.provenance != Provenance::kFunctionInit) {
          violation(fmt::format("{}: mount_appfs outside a function_init phase", where()));
        }
        if (mounted) violation(fmt::format("{}: mount_appfs repeated", where()));
        mounted = true;
        continue;
      }
      const PageRange* range = nullptr;
      if (const auto* w = std::get_if<WriteStep>(&step)) range = &w->range;
      if (const auto* r = std::get_if<ReadStep>(&step)) range = &r->range;
      if (range == nullptr) continue;
      if (range->count == 0) violation(fmt::format("{}: empty page range", where()));
      if (range->end() > spec.memory_pages || range->end() < range->start) {
        violation(fmt::format("{}: pages [{}, {}) outside memory of {} pages", where(),
                              range->start, range->start + range->count,
                              spec.memory_pages));
      }
    }
  }
}

WorkloadSpec parse_workload(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("workload document must be a JSON object");
  const std::string where = "workload";
  WorkloadSpec spec;
  spec.name = string_field(doc, "name", where);
  spec.language_tag = string_field(doc, "language_tag", where);
  spec.workload_seed = u64_field(doc, "workload_seed", where);
  spec.memory_pages = u64_field(doc, "memory_pages", where);
  if (doc.contains("page_size")) {
    spec.page_size = static_cast<std::uint32_t>(u64_field(doc, "page_size", where));
  }
  if (doc.contains("appfs_pages")) {
    const auto& a = doc["appfs_pages"];
    if (!a.is_object()) malformed("appfs_pages must be an object");
    spec.appfs_pages = range_fields(a, "appfs_pages");
  }
  const auto& phases = field(doc, "phases", where);
  if (!phases.is_array()) malformed("phases must be an array");
  for (std::size_t pi = 0; pi < phases.size(); ++pi) {
    const auto& pj = phases[pi];
    const std::string pwhere = fmt::format("phase {}", pi);
    if (!pj.is_object()) malformed(pwhere + ": must be an object");
    Phase phase;
    phase.name = string_field(pj, "name", pwhere);
    const std::string prov = string_field(pj, "provenance", pwhere);
    auto p = parse_provenance(prov);
    if (!p) malformed(fmt::format("{}: unknown provenance '{}'", pwhere, prov));
    phase.provenance = *p;
    const auto& steps = field(pj, "steps", pwhere);
    if (!steps.is_array()) malformed(pwhere + ": steps must be an array");
    for (std::size_t si = 0; si < steps.size(); ++si) {
      phase.steps.push_back(parse_step(steps[si], fmt::format("{} step {}", pwhere, si)));
    }
    spec.phases.push_back(std::move(phase));
  }
  validate_workload(spec);
  return spec;
}

WorkloadSpec load_workload(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open workload " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workload(buf.str());
}

std::string workload_to_json(const WorkloadSpec& spec) {
  ordered_json j;
  j["name"] = spec.name;
  j["language_tag"] = spec.language_tag;
  j["workload_seed"] = spec.workload_seed;
  j["memory_pages"] = spec.memory_pages;
  j["page_size"] = spec.page_size;
  if (spec.appfs_pages) {
    j["appfs_pages"] = {{"start_page", spec.appfs_pages->start},
                        {"page_count", spec.appfs_pages->count}};
  }
  j["phases"] = ordered_json::array();
  for (const Phase& phase : spec.phases) {
    ordered_json pj;
    pj["name"] = phase.name;
    pj["provenance"] = std::string(provenance_name(phase.provenance));
    pj["steps"] = ordered_json::array();
    for (const Step& s : phase.steps) pj["steps"].push_back(step_to_json(s));
    j["phases"].push_back(std::move(pj));
  }
  return j.dump(2) + "\n";
}

std::uint64_t base_prefix_digest(const WorkloadSpec& spec) {
  Fnv1a64 h;
  h.update(spec.language_tag);
  h.update_byte(0);
  h.update_u64(spec.workload_seed);
  h.update_u64(spec.memory_pages);
  h.update_u64(spec.page_size);
  const PhaseRange base = spec.base_phases();
  for (std::size_t i = base.begin; i < base.end; ++i) {
    const Phase& phase = spec.phases[i];
    h.update(phase.name);
    h.update_byte(0);
    h.update_byte(static_cast<std::uint8_t>(phase.provenance));
    h.update_u64(phase.steps.size());
    for (const Step& s : phase.steps) h.update(step_to_json(s).dump());
  }
  return h.value();
}

}  // namespace snaplab::guest
