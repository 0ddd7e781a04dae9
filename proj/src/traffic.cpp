#include "detroute/traffic.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "detroute/rng.hpp"

namespace detroute {

void TrafficDemand::validate(const ContactPlan& plan) const {
  if (src < 0 || src >= plan.node_count() || dst < 0 || dst >= plan.node_count())
    throw ValidationError("demand " + id + ": endpoint is not a valid node id");
  if (src == dst) throw ValidationError("demand " + id + ": source equals sink");
  if (period <= 0) throw ValidationError("demand " + id + ": period must be positive");
  if (size <= 0) throw ValidationError("demand " + id + ": packet size must be positive");
  if (delay_bound <= 0 || delay_bound > period)
    throw ValidationError("demand " + id + ": delay bound must be in (0, period]");
  if (t_start < plan.epoch() || t_start + period > plan.epoch() + plan.horizon())
    throw ValidationError("demand " + id + ": window outside the plan horizon");
}

std::vector<TrafficDemand> generate_demands(const ContactPlan& plan, const TrafficGenOptions& opt) {
  if (opt.count < 0) throw std::invalid_argument("demand count must be non-negative");
  if (plan.node_count() < 2) throw std::invalid_argument("plan needs at least 2 nodes");
  if (opt.period > plan.horizon()) throw std::invalid_argument("horizon shorter than the demand period");
  if (opt.cycle_len <= 0) throw std::invalid_argument("cycle length must be positive");
  if (opt.size_min_mb > opt.size_max_mb || opt.size_min_mb <= 0)
    throw std::invalid_argument("empty size range");
  if (opt.bound_min_ms > opt.bound_max_ms || opt.bound_min_ms <= 0)
    throw std::invalid_argument("empty bound range");

  Rng rng(opt.seed);
  const int n = plan.node_count();
  // latest grid-aligned sending time that keeps the whole period in horizon
  Usec latest = plan.horizon() - opt.period;
  std::int64_t max_slot = latest / opt.cycle_len;

  std::vector<TrafficDemand> out;
  out.reserve(opt.count);
  for (int i = 0; i < opt.count; ++i) {
    TrafficDemand d;
    d.id = "f" + std::to_string(i);
    d.src = static_cast<int>(rng.uniform_i64(0, n - 1));
    int other = static_cast<int>(rng.uniform_i64(0, n - 2));
    d.dst = other >= d.src ? other + 1 : other;
    d.t_start = plan.epoch() + rng.uniform_i64(0, max_slot) * opt.cycle_len;
    d.period = opt.period;
    d.size = mb_to_millibits(rng.uniform_real(opt.size_min_mb, opt.size_max_mb));
    Usec bound = ms_to_usec(rng.uniform_real(opt.bound_min_ms, opt.bound_max_ms));
    d.delay_bound = std::min(bound, opt.period);
    d.validate(plan);
    out.push_back(std::move(d));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TrafficDemand& a, const TrafficDemand& b) { return a.t_start < b.t_start; });
  return out;
}

std::string traffic_to_csv(const std::vector<TrafficDemand>& demands, const ContactPlan& plan) {
  std::ostringstream out;
  out << "id,src,dst,t_f_ms,T_f_ms,A_f_mb,B_f_ms\n";
  for (const TrafficDemand& d : demands) {
    out << d.id << ',' << plan.node_name(d.src) << ',' << plan.node_name(d.dst) << ','
        << format_usec_as_ms(d.t_start - plan.epoch()) << ',' << format_usec_as_ms(d.period) << ','
        << format_millibits_as_mb(d.size) << ',' << format_usec_as_ms(d.delay_bound) << '\n';
  }
  return out.str();
}

void save_traffic(const std::vector<TrafficDemand>& demands, const ContactPlan& plan,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write traffic file: " + path);
  out << traffic_to_csv(demands, plan);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

}  // namespace

std::vector<TrafficDemand> load_traffic(const std::string& path, const ContactPlan& plan) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open traffic file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty traffic file: " + path);
  if (line != "id,src,dst,t_f_ms,T_f_ms,A_f_mb,B_f_ms")
    throw ParseError("unexpected traffic CSV header: " + line);
  std::vector<TrafficDemand> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 7)
      throw ParseError("traffic line " + std::to_string(lineno) + ": expected 7 fields");
    TrafficDemand d;
    try {
      d.id = f[0];
      d.src = plan.node_id(f[1]);
      d.dst = plan.node_id(f[2]);
      d.t_start = plan.epoch() + ms_to_usec(std::stod(f[3]));
      d.period = ms_to_usec(std::stod(f[4]));
      d.size = mb_to_millibits(std::stod(f[5]));
      d.delay_bound = ms_to_usec(std::stod(f[6]));
    } catch (const std::invalid_argument&) {
      throw ParseError("traffic line " + std::to_string(lineno) + ": malformed number");
    }
    d.validate(plan);
    out.push_back(std::move(d));
  }
  if (!std::is_sorted(out.begin(), out.end(), [](const TrafficDemand& a, const TrafficDemand& b) {
        return a.t_start < b.t_start;
      }))
    throw ValidationError("traffic file is not sorted by t_f");
  return out;
}

}  // namespace detroute
