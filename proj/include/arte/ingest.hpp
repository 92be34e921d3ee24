#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arte/date.hpp"

namespace arte {

enum class Medium { Painting, Sculpture, WorkOnPaper, Print, Edition, Other };

std::string_view to_string(Medium medium);
std::optional<Medium> medium_from_name(std::string_view name);

inline constexpr Medium kAllMediums[] = {Medium::Painting, Medium::Print,
                                         Medium::Sculpture, Medium::WorkOnPaper,
                                         Medium::Edition, Medium::Other};

// Case-insensitive mapping from free-text medium descriptions to Medium.
// Unknown strings map to Medium::Other.
class MediumAliases {
 public:
  MediumAliases();  // loaded with the common auction-catalogue spellings

  void add(std::string_view alias, Medium medium);
  Medium resolve(std::string_view text) const;

 private:
  std::map<std::string, Medium> table_;
};

struct AuctionRecord {
  std::string artist;
  std::string title;
  Medium medium = Medium::Other;
  std::string auction_house;
  Date sale_date;
  std::optional<double> height_cm;
  std::optional<double> width_cm;
  double price_usd = 0.0;
  std::optional<double> low_estimate_usd;
  std::optional<double> high_estimate_usd;

  friend bool operator==(const AuctionRecord&, const AuctionRecord&) = default;
};

struct FilterConfig {
  std::set<Medium> allowed_mediums{Medium::Painting, Medium::Sculpture};
  int min_history_years = 10;
  double min_avg_price = 500'000.0;
  Date period_start{1990, 1, 1};
  Date period_end{2024, 12, 31};

  // Throws DomainError when an invariant is broken.
  void validate() const;
};

struct Reject {
  std::size_t line = 0;
  std::string reason;

  friend bool operator==(const Reject&, const Reject&) = default;
};

struct ParseResult {
  std::vector<AuctionRecord> records;
  std::vector<Reject> rejects;
};

struct EligibleArtist {
  std::string artist;
  int first_year = 0;
  int last_year = 0;
  double mean_price = 0.0;
  std::size_t n_records = 0;
};

struct EligibilityResult {
  std::vector<AuctionRecord> records;
  std::vector<EligibleArtist> artists;  // sorted by name
};

inline const std::vector<std::string> kTransactionColumns{
    "artist",   "title",    "medium",    "auction_house",    "sale_date",
    "height_cm", "width_cm", "price_usd", "low_estimate_usd", "high_estimate_usd"};

// Collapses runs of whitespace and trims both ends.
std::string canonical_artist(std::string_view name);

// Malformed header throws ParseError; malformed rows become rejects.
ParseResult parse_transactions(std::istream& source, const FilterConfig& config,
                               const MediumAliases& aliases = MediumAliases{});

std::vector<AuctionRecord> filter_medium(const std::vector<AuctionRecord>& records,
                                         const FilterConfig& config);

// History span is counted in calendar years, last - first + 1.
EligibilityResult filter_eligible_artists(const std::vector<AuctionRecord>& records,
                                          const FilterConfig& config);

void write_transactions_csv(std::ostream& out, const std::vector<AuctionRecord>& records);
void write_rejects_csv(std::ostream& out, const std::vector<Reject>& rejects);

}  // namespace arte
