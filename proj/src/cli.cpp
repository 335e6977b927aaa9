#include "multibanana/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

namespace mb::cli {

namespace {

using json = nlohmann::ordered_json;

json exponents_json(const Exponents& e) {
  json arr = json::array();
  for (int x : e) arr.push_back(x);
  return arr;
}

json shape_fields(const RunConfig& config) {
  json doc;
  doc["shape"] = config.shape;
  if (config.shape != "2x2") doc["w"] = config.w;
  doc["order"] = config.order;
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string join_exponents(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string table_json(const gvpf::GVTable& table, const RunConfig& config) {
  json doc = shape_fields(config);
  doc["variables"] = table.registry->names();
  json coeffs = json::array();
  for (const auto& entry : table.entries) {
    json row;
    row["exponents"] = exponents_json(entry.exponents);
    row["value"] = entry.value.get_str();
    coeffs.push_back(std::move(row));
  }
  doc["coefficients"] = std::move(coeffs);
  return dump(doc);
}

std::string table_csv(const gvpf::GVTable& table) {
  std::ostringstream os;
  for (const auto& name : table.registry->names()) os << name << ',';
  os << "value\n";
  for (const auto& entry : table.entries) {
    for (int x : entry.exponents) os << x << ',';
    os << entry.value.get_str() << '\n';
  }
  return os.str();
}

std::string identities_json(const std::vector<qseries::IdentityResult>& results, int order) {
  json doc;
  doc["order"] = order;
  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    json row;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["checked_order"] = r.order;
    row["first_difference"] = r.first_difference ? exponents_json(*r.first_difference) : json(nullptr);
    rows.push_back(std::move(row));
    all = all && r.passed;
  }
  doc["identities"] = std::move(rows);
  doc["passed"] = all;
  return dump(doc);
}

std::string identities_csv(const std::vector<qseries::IdentityResult>& results) {
  std::ostringstream os;
  os << "name,passed,checked_order,first_difference\n";
  for (const auto& r : results) {
    os << r.name << ',' << (r.passed ? "true" : "false") << ',' << r.order << ','
       << (r.first_difference ? join_exponents(*r.first_difference) : "") << '\n';
  }
  return os.str();
}

std::string cross_check_json(const gvpf::CrossCheckReport& report, const RunConfig& config) {
  json doc = shape_fields(config);
  doc["passed"] = report.passed;
  doc["terms_compared"] = report.terms_compared;
  if (report.first_difference) {
    json diff;
    diff["exponents"] = exponents_json(*report.first_difference);
    diff["closed_form"] = report.closed_form_value.get_str();
    diff["oracle"] = report.oracle_value.get_str();
    doc["first_difference"] = std::move(diff);
  } else {
    doc["first_difference"] = nullptr;
  }
  return dump(doc);
}

std::string cross_check_csv(const gvpf::CrossCheckReport& report) {
  std::ostringstream os;
  os << "shape,order,passed,terms_compared,first_difference,closed_form,oracle\n";
  os << report.shape.name() << ',' << report.order << ',' << (report.passed ? "true" : "false") << ','
     << report.terms_compared << ',';
  if (report.first_difference) {
    os << join_exponents(*report.first_difference) << ',' << report.closed_form_value.get_str() << ','
       << report.oracle_value.get_str();
  } else {
    os << ",,";
  }
  os << '\n';
  return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.order < 0) {
    err << "error: --order must be non-negative\n";
    return kExitUsage;
  }
  const bool json_out = config.format == Format::Json;
  try {
    switch (config.command) {
      case Command::Verify: {
        if (config.order < 1) {
          err << "error: verify needs --order >= 1\n";
          return kExitUsage;
        }
        const auto results = qseries::check_identities(config.order);
        out << (json_out ? identities_json(results, config.order) : identities_csv(results));
        for (const auto& r : results) {
          if (!r.passed) return kExitFailed;
        }
        return kExitOk;
      }
      case Command::Compute:
      case Command::Crosscheck: {
        geometry::BananaShape shape;
        try {
          shape = geometry::BananaShape::parse(config.shape, config.w);
        } catch (const geometry::GeometryError& e) {
          err << "error: " << e.what() << '\n';
          return kExitUsage;
        }
        if (config.command == Command::Compute) {
          const auto table = gvpf::gv_table(shape, config.order);
          out << (json_out ? table_json(table, config) : table_csv(table));
          return kExitOk;
        }
        const auto report = gvpf::cross_check(shape, config.order);
        out << (json_out ? cross_check_json(report, config) : cross_check_csv(report));
        if (!report.passed) err << "cross-check failed for " << shape.name() << '\n';
        return report.passed ? kExitOk : kExitFailed;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitFailed;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genus-0 Gopakumar-Vafa invariants of multi-Banana configurations"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  auto add_common = [&](CLI::App* sub, bool with_shape) {
    if (with_shape) {
      sub->add_option("--shape", config.shape, "2x2 or 1xW")
          ->check(CLI::IsMember({"2x2", "1xW", "1xw"}))
          ->capture_default_str();
      sub->add_option("--w", config.w, "width for 1xW")->check(CLI::PositiveNumber)->capture_default_str();
    }
    sub->add_option("--order", config.order, "total degree (q-order for verify)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  CLI::App* compute = app.add_subcommand("compute", "GV table of the closed-form partition function");
  CLI::App* verify = app.add_subcommand("verify", "Jacobi-form identity suite");
  CLI::App* crosscheck = app.add_subcommand("crosscheck", "closed form against the enumeration oracle");
  add_common(compute, true);
  add_common(verify, false);
  add_common(crosscheck, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 prints help to out and errors to err.
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (compute->parsed()) config.command = Command::Compute;
  if (verify->parsed()) config.command = Command::Verify;
  if (crosscheck->parsed()) config.command = Command::Crosscheck;
  config.format = format == "csv" ? Format::Csv : Format::Json;
  if (config.shape == "1xw") config.shape = "1xW";
  return run(config, out, err);
}

}  // namespace mb::cli
