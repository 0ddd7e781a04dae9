#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detroute/contact_plan.hpp"
#include "detroute/units.hpp"

namespace detroute {

/// One routing request: move a packet of `size` from src to dst, starting no
/// earlier than t_start, within delay_bound, once per period.
struct TrafficDemand {
  std::string id;
  int src = -1;
  int dst = -1;
  Usec t_start = 0;      // absolute earliest sending time
  Usec period = 0;       // planning horizon of the demand
  Millibits size = 0;    // packet size
  Usec delay_bound = 0;  // end-to-end bound

  void validate(const ContactPlan& plan) const;
};

struct TrafficGenOptions {
  int count = 0;
  Usec period = ms(100);
  double size_min_mb = 2.0;
  double size_max_mb = 10.0;
  double bound_min_ms = 20.0;
  double bound_max_ms = 100.0;
  Usec cycle_len = ms(10);  // sending times snap to this grid
  std::uint64_t seed = 0;
};

/// Draws `count` demands with uniform endpoints, sizes, bounds and sending
/// times, sorted by t_start. Deterministic for a given seed.
std::vector<TrafficDemand> generate_demands(const ContactPlan& plan, const TrafficGenOptions& opt);

std::vector<TrafficDemand> load_traffic(const std::string& path, const ContactPlan& plan);
void save_traffic(const std::vector<TrafficDemand>& demands, const ContactPlan& plan,
                  const std::string& path);
std::string traffic_to_csv(const std::vector<TrafficDemand>& demands, const ContactPlan& plan);

}  // namespace detroute
