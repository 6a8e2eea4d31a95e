#pragma once
// Stable file formats. Time steps k are 1-based, individual ids 0-based.
// Doubles are written in shortest round-trip form, so re-reading a file
// reproduces the in-memory values bit-exactly.
//
//   observations.ndjson   one {"k":., "i":., "report":"S|S_fa|I"} per user per step
//   contacts_users.csv    k,i,j rows (i < j, both users) - the observable contacts
//   truth.csv             k,i,state rows for every individual (simulator output)
//   beliefs.csv           k,i,P_S,P_Sfa,P_E,P_I,P_Ia,P_R
//   f_model.json          {"pmf": [...]}

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "betis/compartment.hpp"
#include "betis/contact_model.hpp"
#include "betis/filter.hpp"
#include "betis/report.hpp"

namespace betis {

std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

std::string observations_to_ndjson(const ObservationLog& log);
std::string user_contacts_to_csv(const ObservationLog& log);

// Rebuilds a log from the two stream files. n_users < 0 infers the user count
// from the report records.
ObservationLog read_observation_stream(const std::filesystem::path& ndjson_path,
                                       const std::filesystem::path& contacts_csv_path,
                                       int n_users = -1);

std::string contact_model_to_json(const NonUserContactModel& f);
NonUserContactModel contact_model_from_json(const std::string& json_text);

std::string truth_to_csv(const std::vector<std::vector<Compartment>>& states_per_step);
std::vector<std::vector<Compartment>> truth_from_csv(const std::string& csv_text);

std::string beliefs_to_csv(std::span<const FilterState> states);

}  // namespace betis
