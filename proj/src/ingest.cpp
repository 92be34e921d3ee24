#include "arte/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include <fmt/format.h>

#include "arte/csv.hpp"
#include "arte/error.hpp"

namespace arte {

namespace {

std::string lower(std::string_view text) {
  std::string out = csv::trim(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string{};
}

}  // namespace

std::string_view to_string(Medium medium) {
  switch (medium) {
    case Medium::Painting: return "Painting";
    case Medium::Sculpture: return "Sculpture";
    case Medium::WorkOnPaper: return "WorkOnPaper";
    case Medium::Print: return "Print";
    case Medium::Edition: return "Edition";
    case Medium::Other: return "Other";
  }
  return "Other";
}

std::optional<Medium> medium_from_name(std::string_view name) {
  const std::string key = lower(name);
  for (Medium m : kAllMediums) {
    if (lower(to_string(m)) == key) return m;
  }
  return std::nullopt;
}

MediumAliases::MediumAliases() {
  for (Medium m : kAllMediums) add(to_string(m), m);
  for (auto alias : {"paintings", "oil on canvas", "oil on panel", "oil on board", "oil",
                     "acrylic", "acrylic on canvas", "tempera", "mixed media on canvas",
                     "oil and acrylic on canvas", "enamel on canvas", "ink on silk"}) {
    add(alias, Medium::Painting);
  }
  for (auto alias : {"sculptures", "bronze", "marble", "stainless steel", "painted steel",
                     "wood", "installation"}) {
    add(alias, Medium::Sculpture);
  }
  for (auto alias : {"work on paper", "works on paper", "drawing", "drawings", "watercolor",
                     "watercolour", "gouache", "pastel", "charcoal", "ink on paper"}) {
    add(alias, Medium::WorkOnPaper);
  }
  for (auto alias : {"prints", "lithograph", "screenprint", "silkscreen", "etching",
                     "woodcut", "print/multiple"}) {
    add(alias, Medium::Print);
  }
  for (auto alias : {"editions", "multiple", "multiples", "photograph", "photography"}) {
    add(alias, Medium::Edition);
  }
}

void MediumAliases::add(std::string_view alias, Medium medium) { table_[lower(alias)] = medium; }

Medium MediumAliases::resolve(std::string_view text) const {
  auto it = table_.find(lower(text));
  return it == table_.end() ? Medium::Other : it->second;
}

void FilterConfig::validate() const {
  if (min_history_years < 1) throw DomainError("min_history_years must be >= 1");
  if (min_avg_price < 0.0) throw DomainError("min_avg_price must be >= 0");
  if (!(period_start < period_end)) throw DomainError("period_start must precede period_end");
}

std::string canonical_artist(std::string_view name) {
  std::string out;
  bool pending_space = false;
  for (char ch : name) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

namespace {

// Returns the reject reason, or an empty string when the row is valid.
std::string parse_row(const std::vector<std::string>& f, const FilterConfig& config,
                      const MediumAliases& aliases, AuctionRecord& rec) {
  if (f.size() != kTransactionColumns.size()) {
    return fmt::format("expected {} fields, found {}", kTransactionColumns.size(), f.size());
  }
  rec.artist = canonical_artist(f[0]);
  if (rec.artist.empty()) return "empty artist";
  rec.title = csv::trim(f[1]);
  rec.medium = aliases.resolve(f[2]);
  rec.auction_house = csv::trim(f[3]);

  auto date = Date::parse(csv::trim(f[4]));
  if (!date) return "invalid sale_date";
  if (*date < config.period_start || config.period_end < *date) return "sale_date outside period";
  rec.sale_date = *date;

  auto optional_number = [](const std::string& text, std::optional<double>& slot) {
    if (csv::trim(text).empty()) {
      slot.reset();
      return true;
    }
    slot = csv::parse_double(text);
    return slot.has_value();
  };

  if (!optional_number(f[5], rec.height_cm)) return "invalid height";
  if (rec.height_cm && *rec.height_cm <= 0.0) return "non-positive height";
  if (!optional_number(f[6], rec.width_cm)) return "invalid width";
  if (rec.width_cm && *rec.width_cm <= 0.0) return "non-positive width";

  auto price = csv::parse_double(f[7]);
  if (!price) return "invalid price";
  if (*price <= 0.0) return "non-positive price";
  rec.price_usd = *price;

  if (!optional_number(f[8], rec.low_estimate_usd)) return "invalid low estimate";
  if (rec.low_estimate_usd && *rec.low_estimate_usd < 0.0) return "negative low estimate";
  if (!optional_number(f[9], rec.high_estimate_usd)) return "invalid high estimate";
  if (rec.high_estimate_usd && *rec.high_estimate_usd < 0.0) return "negative high estimate";
  if (rec.low_estimate_usd && rec.high_estimate_usd &&
      *rec.low_estimate_usd > *rec.high_estimate_usd) {
    return "low estimate exceeds high estimate";
  }
  return {};
}

}  // namespace

ParseResult parse_transactions(std::istream& source, const FilterConfig& config,
                               const MediumAliases& aliases) {
  config.validate();
  csv::Reader reader(source);
  csv::require_header(reader, kTransactionColumns, "transactions");

  ParseResult result;
  while (true) {
    std::optional<csv::Row> row;
    try {
      row = reader.next();
    } catch (const ParseError&) {
      // An unterminated quote swallows the rest of the file; report it as one row.
      result.rejects.push_back({reader.record_line(), "unterminated quoted field"});
      break;
    }
    if (!row) break;
    AuctionRecord rec;
    std::string reason = parse_row(row->fields, config, aliases, rec);
    if (reason.empty()) {
      result.records.push_back(std::move(rec));
    } else {
      result.rejects.push_back({row->line, std::move(reason)});
    }
  }
  return result;
}

std::vector<AuctionRecord> filter_medium(const std::vector<AuctionRecord>& records,
                                         const FilterConfig& config) {
  std::vector<AuctionRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [&](const auto& r) {
    return config.allowed_mediums.contains(r.medium);
  });
  return out;
}

EligibilityResult filter_eligible_artists(const std::vector<AuctionRecord>& records,
                                          const FilterConfig& config) {
  struct Acc {
    int first_year = 0;
    int last_year = 0;
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> by_artist;
  for (const auto& r : records) {
    auto [it, inserted] = by_artist.try_emplace(r.artist);
    Acc& acc = it->second;
    const int y = r.sale_date.year();
    if (inserted) {
      acc.first_year = acc.last_year = y;
    } else {
      acc.first_year = std::min(acc.first_year, y);
      acc.last_year = std::max(acc.last_year, y);
    }
    acc.sum += r.price_usd;
    ++acc.n;
  }

  EligibilityResult result;
  for (const auto& [artist, acc] : by_artist) {
    const int span = acc.last_year - acc.first_year + 1;
    const double mean_price = acc.sum / static_cast<double>(acc.n);
    if (span >= config.min_history_years && mean_price >= config.min_avg_price) {
      result.artists.push_back({artist, acc.first_year, acc.last_year, mean_price, acc.n});
    }
  }
  result.records.reserve(records.size());
  for (const auto& r : records) {
    auto it = std::lower_bound(result.artists.begin(), result.artists.end(), r.artist,
                               [](const EligibleArtist& a, const std::string& name) {
                                 return a.artist < name;
                               });
    if (it != result.artists.end() && it->artist == r.artist) result.records.push_back(r);
  }
  return result;
}

void write_transactions_csv(std::ostream& out, const std::vector<AuctionRecord>& records) {
  csv::write_row(out, kTransactionColumns);
  for (const auto& r : records) {
    csv::write_row(out, {r.artist, r.title, std::string(to_string(r.medium)), r.auction_house,
                         r.sale_date.iso(), format_optional(r.height_cm),
                         format_optional(r.width_cm), fmt::format("{}", r.price_usd),
                         format_optional(r.low_estimate_usd),
                         format_optional(r.high_estimate_usd)});
  }
}

void write_rejects_csv(std::ostream& out, const std::vector<Reject>& rejects) {
  csv::write_row(out, {"line", "reason"});
  for (const auto& r : rejects) csv::write_row(out, {std::to_string(r.line), r.reason});
}

}  // namespace arte
