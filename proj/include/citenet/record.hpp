#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace citenet {

/// Canonical venue identities. Everything that is not one of the tracked
/// conferences canonicalizes to Other.
enum class Venue {
  IJCAI,
  AAAI,
  NeurIPS,
  CVPR,
  ECCV,
  ICCV,
  ACL,
  NAACL,
  EMNLP,
  ICML,
  KDD,
  SIGIR,
  WWW,
  Other,
};

inline constexpr int kVenueCount = 14;

const char* venue_name(Venue v);

/// Parses a canonical venue name, case-insensitively. "NIPS" is accepted as
/// a synonym for NeurIPS. Returns nullopt for anything unrecognized.
std::optional<Venue> parse_venue_name(const std::string& name);

struct AuthorRef {
  std::string id;
  std::string name;
  std::optional<std::string> org;

  bool operator==(const AuthorRef&) const = default;
};

struct VenueRef {
  std::string raw;                    // venue string as published
  std::optional<std::string> source_id;
  std::optional<Venue> canonical;     // set by canonicalize_venues only

  bool operator==(const VenueRef&) const = default;
};

/// Inverted-index representation of an abstract: word -> positions.
/// Positions are strictly increasing per word and all < length.
struct IndexedAbstract {
  int length = 0;
  std::map<std::string, std::vector<int>> inverted;

  bool operator==(const IndexedAbstract&) const = default;
};

struct PaperRecord {
  std::string id;
  std::string title;
  std::vector<AuthorRef> authors;
  VenueRef venue;
  int year = 0;
  std::vector<std::string> references;
  std::optional<IndexedAbstract> abstract;

  bool operator==(const PaperRecord&) const = default;
};

}  // namespace citenet
