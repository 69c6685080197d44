#pragma once

#include <json.hpp>
#include <cstdint>
#include <string>

#include "anderlab/experiments.hpp"
#include "anderlab/geometry.hpp"
#include "anderlab/potential.hpp"
#include "anderlab/profile.hpp"
#include "anderlab/spectral.hpp"

namespace anderlab {

using ojson = nlohmann::ordered_json;

ojson shape_to_json(const ShapeSpec& shape);
ShapeSpec shape_from_json(const ojson& j);

ojson profile_to_json(const ProfileFn& f);
ProfileFn profile_from_json(const ojson& j);

ojson potential_to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const ojson& j);

ojson config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const ojson& j);

ojson eigen_result_to_json(const EigenResult& res, bool include_vectors = false);
ojson stats_to_json(const FluctuationStats& stats);
ojson oracle_report_to_json(const OracleReport& report);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
void throw_unless_parent_exists(const std::string& path);

}  // namespace anderlab
