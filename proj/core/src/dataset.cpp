#include "fairtree/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fairtree/errors.hpp"
#include "fairtree/rng.hpp"

namespace fairtree {

namespace {

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "?";
}

double parse_number(const std::string& cell, const std::string& column) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw DataError("column '" + column + "': cannot parse numeric value '" + cell + "'");
  }
  return value;
}

// One logical CSV record, honoring double-quote quoting ("" escapes a quote)
// and quoted embedded newlines. Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int ch = in.get();
  if (ch == EOF) return false;

  std::string cell;
  bool quoted = false;
  while (true) {
    if (ch == EOF) {
      fields.push_back(cell);
      return true;
    }
    char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          cell.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      fields.push_back(cell);
      return true;
    } else {
      cell.push_back(c);
    }
    ch = in.get();
  }
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open CSV file: " + path);

  RawTable table;
  if (!read_record(in, table.header) || table.header.empty()) {
    throw DataError("CSV file has no header row: " + path);
  }
  std::vector<std::string> fields;
  while (read_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing blank line
    if (fields.size() != table.header.size()) {
      throw DataError("CSV row " + std::to_string(table.rows.size() + 2) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(fields);
  }
  return table;
}

std::size_t column_index(const RawTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  throw ConfigError("column '" + name + "' not found in CSV header");
}

int map_binary_label(const std::string& cell, const ColumnSpec& spec) {
  if (spec.kind == ColumnKind::target && spec.pass_threshold.has_value()) {
    return parse_number(cell, spec.name) >= *spec.pass_threshold ? 1 : 0;
  }
  const auto& label = spec.kind == ColumnKind::target ? spec.positive_label
                                                      : spec.privileged_label;
  if (label.has_value()) return cell == *label ? 1 : 0;
  const double value = parse_number(cell, spec.name);
  if (value != 0.0 && value != 1.0) {
    throw DataError("column '" + spec.name + "': value '" + cell +
                    "' is not binary and no label mapping was given");
  }
  return value == 1.0 ? 1 : 0;
}

void validate_specs(const std::vector<ColumnSpec>& specs) {
  std::size_t targets = 0, sensitives = 0;
  std::set<std::string> names;
  for (const auto& spec : specs) {
    if (spec.name.empty()) throw ConfigError("column spec with empty name");
    if (!names.insert(spec.name).second) {
      throw ConfigError("duplicate column spec: " + spec.name);
    }
    if (spec.kind == ColumnKind::target) ++targets;
    if (spec.kind == ColumnKind::sensitive) ++sensitives;
  }
  if (targets != 1) throw ConfigError("column specs must designate exactly one target");
  if (sensitives != 1) throw ConfigError("column specs must designate exactly one sensitive column");
}

}  // namespace

Dataset Dataset::subset(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.n = rows.size();
  out.columns.resize(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out.columns[j].reserve(rows.size());
    for (std::size_t i : rows) out.columns[j].push_back(columns[j][i]);
  }
  if (!sensitive.empty()) {
    out.sensitive.reserve(rows.size());
    for (std::size_t i : rows) out.sensitive.push_back(sensitive[i]);
  }
  if (!target.empty()) {
    out.target.reserve(rows.size());
    for (std::size_t i : rows) out.target.push_back(target[i]);
  }
  return out;
}

std::vector<ColumnSpec> parse_column_specs(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("column spec document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("columns") || !doc["columns"].is_array()) {
    throw ConfigError("column spec document must be an object with a 'columns' array");
  }

  std::vector<ColumnSpec> specs;
  for (const auto& item : doc["columns"]) {
    if (!item.is_object() || !item.contains("name") || !item.contains("kind")) {
      throw ConfigError("every column spec needs 'name' and 'kind'");
    }
    ColumnSpec spec;
    spec.name = item["name"].get<std::string>();
    const std::string kind = item["kind"].get<std::string>();
    if (kind == "numeric") spec.kind = ColumnKind::numeric;
    else if (kind == "categorical") spec.kind = ColumnKind::categorical;
    else if (kind == "target") spec.kind = ColumnKind::target;
    else if (kind == "sensitive") spec.kind = ColumnKind::sensitive;
    else if (kind == "drop") spec.kind = ColumnKind::drop;
    else throw ConfigError("unknown column kind '" + kind + "' for column '" + spec.name + "'");
    if (item.contains("positive_label")) {
      spec.positive_label = item["positive_label"].get<std::string>();
    }
    if (item.contains("privileged_label")) {
      spec.privileged_label = item["privileged_label"].get<std::string>();
    }
    if (item.contains("pass_threshold")) {
      spec.pass_threshold = item["pass_threshold"].get<double>();
    }
    specs.push_back(std::move(spec));
  }
  validate_specs(specs);
  return specs;
}

std::vector<ColumnSpec> load_column_specs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open column spec file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_column_specs(buffer.str());
}

LoadResult load_csv(const std::string& path, const std::vector<ColumnSpec>& specs) {
  validate_specs(specs);
  const RawTable table = read_csv(path);

  struct UsedColumn {
    const ColumnSpec* spec;
    std::size_t csv_index;
  };
  std::vector<UsedColumn> used;
  for (const auto& spec : specs) {
    if (spec.kind == ColumnKind::drop) {
      column_index(table, spec.name);  // still must exist
      continue;
    }
    used.push_back({&spec, column_index(table, spec.name)});
  }

  // Listwise deletion over the used columns.
  std::vector<std::size_t> kept;
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    bool missing = false;
    for (const auto& uc : used) {
      if (is_missing(table.rows[i][uc.csv_index])) {
        missing = true;
        break;
      }
    }
    if (missing) {
      ++dropped;
    } else {
      kept.push_back(i);
    }
  }
  if (kept.empty()) throw DataError("no rows left after dropping missing values: " + path);

  Dataset data;
  data.n = kept.size();
  for (const auto& uc : used) {
    const ColumnSpec& spec = *uc.spec;
    if (spec.kind == ColumnKind::numeric) {
      std::vector<double> column;
      column.reserve(kept.size());
      for (std::size_t i : kept) {
        column.push_back(parse_number(table.rows[i][uc.csv_index], spec.name));
      }
      data.columns.push_back(std::move(column));
      data.feature_names.push_back(spec.name);
    } else if (spec.kind == ColumnKind::categorical) {
      std::set<std::string> levels;
      for (std::size_t i : kept) levels.insert(table.rows[i][uc.csv_index]);
      for (const auto& level : levels) {
        std::vector<double> column;
        column.reserve(kept.size());
        for (std::size_t i : kept) {
          column.push_back(table.rows[i][uc.csv_index] == level ? 1.0 : 0.0);
        }
        data.columns.push_back(std::move(column));
        data.feature_names.push_back(spec.name + "=" + level);
      }
    } else if (spec.kind == ColumnKind::target) {
      for (std::size_t i : kept) {
        data.target.push_back(map_binary_label(table.rows[i][uc.csv_index], spec));
      }
    } else if (spec.kind == ColumnKind::sensitive) {
      for (std::size_t i : kept) {
        data.sensitive.push_back(map_binary_label(table.rows[i][uc.csv_index], spec));
      }
    }
  }

  std::set<std::string> unique_names(data.feature_names.begin(), data.feature_names.end());
  if (unique_names.size() != data.feature_names.size()) {
    throw DataError("encoded feature names collide; rename the offending columns");
  }
  return LoadResult{std::move(data), dropped};
}

std::vector<std::vector<double>> load_feature_matrix(
    const std::string& path, const std::vector<ColumnSpec>& specs,
    const std::vector<std::string>& feature_names) {
  const RawTable table = read_csv(path);

  std::map<std::string, const ColumnSpec*> by_name;
  for (const auto& spec : specs) by_name[spec.name] = &spec;

  struct Source {
    std::size_t csv_index;
    bool indicator;
    std::string level;
  };
  std::vector<Source> sources;
  for (const auto& feature : feature_names) {
    const auto eq = feature.find('=');
    const std::string base = eq == std::string::npos ? feature : feature.substr(0, eq);
    const auto it = by_name.find(base);
    if (it == by_name.end()) {
      throw DataError("model feature '" + feature + "' has no column spec");
    }
    const ColumnSpec& spec = *it->second;
    if (eq == std::string::npos) {
      if (spec.kind != ColumnKind::numeric) {
        throw DataError("model feature '" + feature + "' expects a numeric column");
      }
      sources.push_back({column_index(table, base), false, ""});
    } else {
      if (spec.kind != ColumnKind::categorical) {
        throw DataError("model feature '" + feature + "' expects a categorical column");
      }
      sources.push_back({column_index(table, base), true, feature.substr(eq + 1)});
    }
  }

  std::vector<std::vector<double>> columns(feature_names.size());
  for (auto& column : columns) column.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t j = 0; j < sources.size(); ++j) {
      const std::string& cell = table.rows[i][sources[j].csv_index];
      if (is_missing(cell)) {
        throw DataError("row " + std::to_string(i + 2) + ": missing value in column '" +
                        table.header[sources[j].csv_index] +
                        "'; predictions need complete rows");
      }
      if (sources[j].indicator) {
        columns[j].push_back(cell == sources[j].level ? 1.0 : 0.0);
      } else {
        columns[j].push_back(parse_number(cell, table.header[sources[j].csv_index]));
      }
    }
  }
  return columns;
}

HoldoutSplit holdout_split(const Dataset& data, const HoldoutPlan& plan) {
  if (!(plan.train_fraction > 0.0) || !(plan.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie strictly between 0 and 1");
  }
  if (data.n < 10) throw DataError("holdout_split needs at least 10 rows");
  if (data.target.size() != data.n || data.sensitive.size() != data.n) {
    throw DataError("holdout_split needs target and sensitive vectors");
  }

  const auto total_train =
      static_cast<std::size_t>(std::llround(plan.train_fraction * static_cast<double>(data.n)));
  if (total_train == 0 || total_train >= data.n) {
    throw DataError("train_fraction leaves an empty partition");
  }

  Rng rng(plan.seed);
  std::vector<std::size_t> train_rows;
  if (plan.stratified) {
    // Cells in fixed (target, sensitive) order; ties in the largest-remainder
    // allocation resolve to the lower cell index.
    std::vector<std::vector<std::size_t>> cells(4);
    for (std::size_t i = 0; i < data.n; ++i) {
      cells[static_cast<std::size_t>(data.target[i] * 2 + data.sensitive[i])].push_back(i);
    }
    std::vector<std::size_t> take(4, 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      const double exact = plan.train_fraction * static_cast<double>(cells[c].size());
      take[c] = static_cast<std::size_t>(std::floor(exact));
      assigned += take[c];
      remainders.push_back({exact - std::floor(exact), c});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < total_train; ++assigned, ++k) {
      take[remainders[k % remainders.size()].second] += 1;
    }
    for (std::size_t c = 0; c < 4; ++c) {
      take[c] = std::min(take[c], cells[c].size());
      rng.shuffle(cells[c]);
      train_rows.insert(train_rows.end(), cells[c].begin(), cells[c].begin() + take[c]);
    }
  } else {
    std::vector<std::size_t> order(data.n);
    for (std::size_t i = 0; i < data.n; ++i) order[i] = i;
    rng.shuffle(order);
    train_rows.assign(order.begin(), order.begin() + total_train);
  }

  std::sort(train_rows.begin(), train_rows.end());
  std::vector<char> in_train(data.n, 0);
  for (std::size_t i : train_rows) in_train[i] = 1;
  std::vector<std::size_t> test_rows;
  test_rows.reserve(data.n - train_rows.size());
  for (std::size_t i = 0; i < data.n; ++i) {
    if (!in_train[i]) test_rows.push_back(i);
  }
  if (train_rows.empty() || test_rows.empty()) {
    throw DataError("holdout_split produced an empty partition");
  }

  HoldoutSplit split;
  split.train = data.subset(train_rows);
  split.test = data.subset(test_rows);
  split.train_rows = std::move(train_rows);
  split.test_rows = std::move(test_rows);
  return split;
}

}  // namespace fairtree
