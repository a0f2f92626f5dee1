#pragma once

#include "cnb/centralconfig.hpp"
#include "cnb/moulton.hpp"
#include "cnb/relequil.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace cnb::io {

using nlohmann::json;

struct InputConfig {
    Configuration config;
    std::optional<double> lambda;
};

// {space, masses, points, lambda?}; numbers may be JSON numbers or decimal
// strings. Throws Error(InvalidInput) with a line number on malformed text.
InputConfig parse_config(const std::string& text);
InputConfig read_config_file(const std::string& path);

json config_json(const Configuration& c);
json report_json(const CCReport& r);
json re_json(const REInstance& re, const CCReport& base);
json conserved_json(double t, const ConservedSet& s);

// Header t,i,x,y,z,w,px,py,pz,pw; one row per body per sample.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

// ordering,theta_1..theta_N,lambda,I,U,min_hessian_eig
void write_moulton_csv(std::ostream& os, const std::vector<MoultonClass>& cat);

// Shortest round-trip decimal form of a double.
std::string fmt(double v);

} // namespace cnb::io
