#pragma once

#include <map>
#include <string>
#include <vector>

// Hand evaluation of the bound formulas on sorted parameter vectors (1-based ranks).
namespace oracle {

std::map<std::string, double> pair_formulas(std::vector<double> u, std::vector<double> v, double horizon,
                                            double delta);
std::map<std::string, double> mono_formulas(std::vector<double> u, double horizon, double delta);
std::map<std::string, double> matching_id_formulas(std::vector<double> u, double delta);
std::map<std::string, double> exploration_first_formulas(std::vector<double> u, std::size_t m);

}  // namespace oracle
