#include "resprod/disambiguation.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <unordered_map>

#include "resprod/errors.hpp"
#include "resprod/text.hpp"

namespace resprod::disambiguation {

void AffiliationDictionary::add(std::string_view raw_pattern, const UniversityId& university) {
  std::string key = text::normalize(raw_pattern);
  if (key.empty()) {
    throw StructuralError("affiliation pattern '" + std::string(raw_pattern) + "' is empty after normalization");
  }
  const auto it = patterns_.find(key);
  if (it != patterns_.end()) {
    if (it->second.university != university) {
      throw StructuralError("affiliation pattern '" + key + "' maps to both " +
                            it->second.university + " and " + university);
    }
    return;
  }
  Pattern p{text::split_words(key), university};
  patterns_.emplace(std::move(key), std::move(p));
}

std::optional<UniversityId> AffiliationDictionary::lookup(std::string_view raw_affiliation) const {
  const std::string norm = text::normalize(raw_affiliation);
  if (norm.empty()) return std::nullopt;
  if (const auto hit = patterns_.find(norm); hit != patterns_.end()) return hit->second.university;

  const auto words = text::split_words(norm);
  const Pattern* best = nullptr;
  std::size_t best_pos = 0;
  // patterns_ iterates in lexicographic key order, so strict comparisons keep
  // the smallest key among otherwise equal candidates.
  for (const auto& [key, pattern] : patterns_) {
    const auto& pw = pattern.words;
    if (pw.size() > words.size()) continue;
    if (best && pw.size() < best->words.size()) continue;
    for (std::size_t start = 0; start + pw.size() <= words.size(); ++start) {
      if (!std::equal(pw.begin(), pw.end(), words.begin() + static_cast<std::ptrdiff_t>(start))) continue;
      if (!best || pw.size() > best->words.size() || start < best_pos) {
        best = &pattern;
        best_pos = start;
      }
      break;
    }
  }
  if (!best) return std::nullopt;
  return best->university;
}

std::set<UniversityId> AffiliationDictionary::universities() const {
  std::set<UniversityId> out;
  for (const auto& [key, p] : patterns_) out.insert(p.university);
  return out;
}

std::optional<UniversityId> canonicalize_affiliation(std::string_view raw,
                                                     const AffiliationDictionary& dict) {
  return dict.lookup(raw);
}

std::optional<AuthorToken> parse_author_token(std::string_view raw) {
  const auto comma = raw.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  AuthorToken token;
  token.surname = text::normalize_surname(raw.substr(0, comma));
  const std::string given = text::fold_to_ascii(raw.substr(comma + 1));

  std::string piece;
  auto flush = [&] {
    if (piece.empty()) return;
    const bool all_upper = std::all_of(piece.begin(), piece.end(),
                                       [](char c) { return std::isupper(static_cast<unsigned char>(c)); });
    if (all_upper) {
      token.initials += piece;
    } else {
      token.initials.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(piece.front()))));
    }
    piece.clear();
  };
  for (char c : given) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      piece.push_back(c);
    } else {
      flush();
    }
  }
  flush();

  if (token.surname.empty() || token.surname == "-" || token.initials.empty()) return std::nullopt;
  if (text::surname_variants(token.surname).empty()) return std::nullopt;
  return token;
}

std::string_view to_string(OutcomeKind kind) noexcept {
  switch (kind) {
    case OutcomeKind::matched:
      return "matched";
    case OutcomeKind::ambiguous:
      return "ambiguous";
    case OutcomeKind::unmatched:
      return "unmatched";
  }
  return "?";
}

std::string_view to_string(Category category) noexcept {
  switch (category) {
    case Category::resolved:
      return "resolved";
    case Category::manual_review:
      return "manual_review";
    case Category::discarded:
      return "discarded";
    case Category::unresolvable:
      return "unresolvable";
  }
  return "?";
}

MatchOutcome match_author(const AuthorToken& token, std::span<const StaffMember* const> staff_in_scope) {
  const auto token_variants = text::surname_variants(token.surname);
  auto shares_variant = [&](const StaffMember& s) {
    const auto v = text::surname_variants(s.surname);
    return std::any_of(v.begin(), v.end(), [&](const std::string& x) {
      return std::find(token_variants.begin(), token_variants.end(), x) != token_variants.end();
    });
  };

  struct Candidate {
    const StaffMember* staff;
    std::string initials;
  };
  std::vector<Candidate> candidates;
  for (const StaffMember* s : staff_in_scope) {
    std::string init = text::initials_of(s->first_names);
    if (init.empty() || init.front() != token.initials.front()) continue;
    if (!shares_variant(*s)) continue;
    candidates.push_back({s, std::move(init)});
  }

  if (token.initials.size() > 1) {
    auto disagrees = [&](const Candidate& c) {
      const std::size_t common = std::min(c.initials.size(), token.initials.size());
      return c.initials.compare(0, common, token.initials, 0, common) != 0;
    };
    std::erase_if(candidates, disagrees);
    const bool some_complete = std::any_of(candidates.begin(), candidates.end(), [&](const Candidate& c) {
      return c.initials.size() >= token.initials.size();
    });
    if (some_complete) {
      std::erase_if(candidates, [&](const Candidate& c) { return c.initials.size() < token.initials.size(); });
    }
  }

  MatchOutcome out;
  for (const auto& c : candidates) out.candidates.push_back(c.staff->id);
  std::sort(out.candidates.begin(), out.candidates.end());
  out.candidates.erase(std::unique(out.candidates.begin(), out.candidates.end()), out.candidates.end());
  if (out.candidates.size() == 1) {
    out.kind = OutcomeKind::matched;
  } else if (out.candidates.size() > 1) {
    out.kind = OutcomeKind::ambiguous;
  }
  return out;
}

std::vector<const StaffMember*> staff_in_scope(const StaffRegistry& registry,
                                               const std::vector<UniversityId>& universities, int year) {
  std::vector<const StaffMember*> out;
  for (const auto& m : registry.members()) {
    if (!m.active_in(year)) continue;
    if (std::find(universities.begin(), universities.end(), m.university) == universities.end()) continue;
    out.push_back(&m);
  }
  return out;
}

namespace {

// University -> surname variant -> staff, so each byline token only scans namesakes.
class SurnameIndex {
 public:
  explicit SurnameIndex(const StaffRegistry& registry) {
    for (const auto& m : registry.members()) {
      for (const auto& v : text::surname_variants(m.surname)) index_[m.university][v].push_back(&m);
    }
  }

  std::vector<const StaffMember*> namesakes(const AuthorToken& token,
                                            const std::vector<UniversityId>& universities,
                                            int year) const {
    std::vector<const StaffMember*> out;
    const auto variants = text::surname_variants(token.surname);
    for (const auto& u : universities) {
      const auto uni = index_.find(u);
      if (uni == index_.end()) continue;
      for (const auto& v : variants) {
        const auto hit = uni->second.find(v);
        if (hit == uni->second.end()) continue;
        for (const StaffMember* m : hit->second) {
          if (m->active_in(year)) out.push_back(m);
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const StaffMember* a, const StaffMember* b) { return a->id < b->id; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  std::unordered_map<UniversityId, std::unordered_map<std::string, std::vector<const StaffMember*>>> index_;
};

}  // namespace

CorpusResult disambiguate_corpus(const std::vector<Publication>& publications,
                                 const StaffRegistry& registry, const AffiliationDictionary& dict,
                                 const std::vector<ManualOverride>& overrides) {
  CorpusResult result;
  const SurnameIndex index(registry);

  std::map<std::pair<PublicationId, std::size_t>, const ManualOverride*> pending;
  for (const auto& o : overrides) {
    if (!pending.emplace(std::make_pair(o.publication, o.position), &o).second) {
      result.warnings.push_back("duplicate override for " + o.publication + " position " +
                                std::to_string(o.position) + " ignored");
    }
  }
  std::set<std::pair<PublicationId, std::size_t>> used;

  for (const auto& pub : publications) {
    PublicationOutcome po;
    po.publication = pub.id;
    for (const auto& raw : pub.raw_affiliations) {
      if (auto u = dict.lookup(raw)) po.affiliations.push_back(*u);
    }
    std::sort(po.affiliations.begin(), po.affiliations.end());
    po.affiliations.erase(std::unique(po.affiliations.begin(), po.affiliations.end()), po.affiliations.end());
    ++result.stats.total;

    std::vector<AuthorToken> tokens;
    if (pub.authors.empty()) po.error = "publication has no authors";
    for (std::size_t i = 0; i < pub.authors.size() && po.error.empty(); ++i) {
      auto t = parse_author_token(pub.authors[i]);
      if (!t) {
        po.error = "unparseable author token '" + pub.authors[i] + "' at position " + std::to_string(i + 1);
      } else {
        tokens.push_back(std::move(*t));
      }
    }
    if (!po.error.empty()) {
      po.category = Category::unresolvable;
      ++result.stats.unresolvable;
      result.publications.push_back(std::move(po));
      continue;
    }

    bool any_matched = false;
    bool any_ambiguous = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      Assignment a;
      a.publication = pub.id;
      a.position = i + 1;
      a.raw_token = pub.authors[i];

      const auto key = std::make_pair(pub.id, a.position);
      bool applied = false;
      if (const auto ov = pending.find(key); ov != pending.end()) {
        used.insert(key);
        const ManualOverride& o = *ov->second;
        if (!o.staff) {
          a.outcome = MatchOutcome::unmatched();
          applied = true;
        } else if (const StaffMember* s = registry.find(*o.staff); !s) {
          result.warnings.push_back("override for " + pub.id + " position " + std::to_string(a.position) +
                                    " names unknown staff " + *o.staff + "; ignored");
        } else if (!std::binary_search(po.affiliations.begin(), po.affiliations.end(), s->university) ||
                   !s->active_in(pub.year)) {
          result.warnings.push_back("override for " + pub.id + " position " + std::to_string(a.position) +
                                    " names staff " + *o.staff +
                                    " outside the publication's universities or years; ignored");
        } else {
          a.outcome = MatchOutcome::matched(s->id);
          applied = true;
        }
        a.from_override = applied;
      }
      if (!applied) {
        const auto namesakes = index.namesakes(tokens[i], po.affiliations, pub.year);
        a.outcome = match_author(tokens[i], namesakes);
      }
      any_matched |= a.outcome.kind == OutcomeKind::matched;
      if (a.outcome.kind == OutcomeKind::ambiguous) {
        any_ambiguous = true;
        result.manual_review.push_back({pub.id, a.position, a.raw_token, a.outcome.candidates});
      }
      result.assignments.push_back(std::move(a));
    }

    if (any_ambiguous) {
      po.category = Category::manual_review;
      ++result.stats.manual_review;
    } else if (any_matched) {
      po.category = Category::resolved;
      ++result.stats.resolved;
    } else {
      po.category = Category::discarded;
      ++result.stats.discarded;
    }
    result.publications.push_back(std::move(po));
  }

  for (const auto& [key, o] : pending) {
    if (!used.count(key)) {
      result.warnings.push_back("override for " + key.first + " position " + std::to_string(key.second) +
                                " matches no byline position; ignored");
    }
  }
  return result;
}

}  // namespace resprod::disambiguation
