#include <doctest.h>

#include <random>

#include "resprod/disambiguation.hpp"
#include "resprod/errors.hpp"
#include "resprod/text.hpp"

using namespace resprod;
using namespace resprod::disambiguation;

namespace {

StaffMember staff(std::string id, std::string surname, std::string first, std::string uni,
                  int from = 1990, int to = 2010, std::string area = "1") {
  return {std::move(id), std::move(surname), std::move(first), Rank::associate_professor,
          std::move(uni), std::move(area), from, to};
}

AuthorToken token(std::string_view raw) {
  auto t = parse_author_token(raw);
  REQUIRE(t.has_value());
  return *t;
}

AffiliationDictionary rome_dictionary() {
  AffiliationDictionary d;
  d.add("UNIV ROMA TOR VERGATA", "U_TV");
  d.add("Universita di Roma Tor Vergata", "U_TV");
  d.add("UNIV ROMA LA SAPIENZA", "U_SAP");
  d.add("POLITECN MILAN", "U_PM");
  return d;
}

}  // namespace

TEST_CASE("text normalization") {
  CHECK(text::normalize("Università di Roma 'Tor Vergata'") == "UNIVERSITA DI ROMA TOR VERGATA");
  CHECK(text::normalize("  Dept. Phys.,  Univ   Pisa ") == "DEPT PHYS UNIV PISA");
  CHECK(text::fold_to_ascii("Łódź Ñandú Straße") == "Lodz Nandu StraSSe");
  CHECK(text::surname_variants("De-Luca") == std::vector<std::string>{"DE LUCA", "DELUCA"});
  CHECK(text::surname_variants("D'Angelo") == std::vector<std::string>{"D ANGELO", "DANGELO"});
  CHECK(text::surname_variants("  de   luca ") == std::vector<std::string>{"DE LUCA"});
  CHECK(text::initials_of("Maria Anna") == "MA");
  CHECK(text::initials_of("Gian-Luca") == "GL");
}

TEST_CASE("property: normalization is idempotent") {
  std::mt19937_64 rng(1);
  const std::vector<std::string> atoms{"à", "É", "ñ", "'", "-", " ", ",", "a", "Z", "ß", "Ł", "\"", "9", ".", "ő"};
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> len(0, 20);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += atoms[pick(rng)];
    const auto once = text::normalize(s);
    CHECK(text::normalize(once) == once);
    const auto sur = text::normalize_surname(s);
    CHECK(text::normalize_surname(sur) == sur);
  }
}

TEST_CASE("canonicalize_affiliation") {
  const auto d = rome_dictionary();
  CHECK(canonicalize_affiliation("UNIV ROMA TOR VERGATA", d) == "U_TV");
  CHECK(canonicalize_affiliation("Università di Roma 'Tor Vergata'", d) == "U_TV");
  CHECK(canonicalize_affiliation("Dipartimento Ingn Impresa, Univ Roma Tor Vergata, I-00133 Rome", d) == "U_TV");
  CHECK_FALSE(canonicalize_affiliation("MIT", d).has_value());
  CHECK_FALSE(canonicalize_affiliation("", d).has_value());
}

TEST_CASE("affiliation dictionary rejects conflicting patterns") {
  AffiliationDictionary d;
  d.add("UNIV PISA", "U_PI");
  d.add("Univ. Pisa", "U_PI");
  CHECK(d.size() == 1);
  CHECK_THROWS_AS(d.add("univ pisa", "U_OTHER"), StructuralError);
  CHECK_THROWS_AS(d.add("...", "U_PI"), StructuralError);
}

TEST_CASE("longest pattern wins") {
  AffiliationDictionary d;
  d.add("UNIV NAPLES", "U_NA1");
  d.add("UNIV NAPLES 2", "U_NA2");
  CHECK(d.lookup("Dept Chem, Univ Naples 2, Caserta") == "U_NA2");
  CHECK(d.lookup("Dept Chem, Univ Naples Federico II") == "U_NA1");
}

TEST_CASE("author token parsing") {
  CHECK(token("ROSSI, M").initials == "M");
  CHECK(token("ROSSI,MA").initials == "MA");
  CHECK(token("Rossi, M.A.").initials == "MA");
  CHECK(token("Rossi, Maria Anna").initials == "MA");
  CHECK(token("DE-LUCA, G").surname == "DE-LUCA");
  CHECK_FALSE(parse_author_token("ROSSI").has_value());
  CHECK_FALSE(parse_author_token("ROSSI, ").has_value());
  CHECK_FALSE(parse_author_token(", M").has_value());
}

TEST_CASE("match_author rules") {
  const auto mario = staff("s1", "Rossi", "Mario", "U_TV");
  const auto marta = staff("s2", "Rossi", "Marta", "U_TV");
  const auto maria_anna = staff("s3", "Rossi", "Maria Anna", "U_TV");

  SUBCASE("unique candidate") {
    const StaffMember* scope[] = {&mario};
    CHECK(match_author(token("ROSSI, M"), scope) == MatchOutcome::matched("s1"));
  }
  SUBCASE("homonyms are ambiguous") {
    const StaffMember* scope[] = {&mario, &marta};
    const auto out = match_author(token("ROSSI, M"), scope);
    CHECK(out.kind == OutcomeKind::ambiguous);
    CHECK(out.candidates == std::vector<StaffId>{"s1", "s2"});
  }
  SUBCASE("multi-initial pruning") {
    const StaffMember* scope[] = {&mario, &maria_anna};
    CHECK(match_author(token("ROSSI, M.A."), scope) == MatchOutcome::matched("s3"));
  }
  SUBCASE("extra token initial alone does not exclude the only namesake") {
    const StaffMember* scope[] = {&mario};
    CHECK(match_author(token("ROSSI, MA"), scope) == MatchOutcome::matched("s1"));
  }
  SUBCASE("conflicting second initial") {
    const auto mario_luigi = staff("s4", "Rossi", "Mario Luigi", "U_TV");
    const StaffMember* scope[] = {&mario_luigi};
    CHECK(match_author(token("ROSSI, MA"), scope).kind == OutcomeKind::unmatched);
  }
  SUBCASE("no candidate") {
    const StaffMember* scope[] = {&mario};
    CHECK(match_author(token("BIANCHI, M"), scope).kind == OutcomeKind::unmatched);
    CHECK(match_author(token("ROSSI, G"), scope).kind == OutcomeKind::unmatched);
  }
  SUBCASE("hyphen and diacritics") {
    const auto de_luca = staff("s5", "De Luca", "Giovanni", "U_TV");
    const auto nicolo = staff("s6", "Nicolò", "Paolo", "U_TV");
    const StaffMember* scope[] = {&de_luca, &nicolo};
    CHECK(match_author(token("DE-LUCA, G"), scope) == MatchOutcome::matched("s5"));
    CHECK(match_author(token("NICOLO, P"), scope) == MatchOutcome::matched("s6"));
    const auto deluca = staff("s7", "Deluca", "Gino", "U_TV");
    const StaffMember* both[] = {&de_luca, &deluca};
    CHECK(match_author(token("DE-LUCA, G"), both).kind == OutcomeKind::ambiguous);
  }
}

TEST_CASE("staff scope follows universities and active years") {
  const StaffRegistry reg({staff("s1", "Rossi", "Mario", "U_TV", 1990, 2001),
                           staff("s2", "Rossi", "Mario", "U_SAP", 1990, 2010)});
  CHECK(staff_in_scope(reg, {"U_TV"}, 2001).size() == 1);
  CHECK(staff_in_scope(reg, {"U_TV"}, 2002).empty());
  CHECK(staff_in_scope(reg, {"U_TV", "U_SAP"}, 2000).size() == 2);
}

TEST_CASE("disambiguate_corpus: single records") {
  const StaffRegistry reg({staff("s1", "Rossi", "Mario", "U_TV"), staff("s2", "Verdi", "Anna", "U_TV")});
  const auto dict = rome_dictionary();

  SUBCASE("clean record resolves") {
    const std::vector<Publication> pubs{
        {"p1", 2002, DocType::article, "j1", {"ROSSI, M", "VERDI, A"}, {"Univ Roma Tor Vergata"}}};
    const auto r = disambiguate_corpus(pubs, reg, dict);
    CHECK(r.stats == DisambiguationStats{1, 1, 0, 0, 0});
    CHECK(r.assignments.size() == 2);
  }
  SUBCASE("non-staff byline is discarded") {
    const std::vector<Publication> pubs{
        {"p1", 2002, DocType::article, "j1", {"SMITH, J", "JONES, K"}, {"Univ Roma Tor Vergata"}}};
    const auto r = disambiguate_corpus(pubs, reg, dict);
    CHECK(r.stats == DisambiguationStats{1, 0, 0, 1, 0});
  }
  SUBCASE("corrupt record is unresolvable, corpus continues") {
    const std::vector<Publication> pubs{
        {"p1", 2002, DocType::article, "j1", {}, {"Univ Roma Tor Vergata"}},
        {"p2", 2002, DocType::article, "j1", {"ROSSI"}, {"Univ Roma Tor Vergata"}},
        {"p3", 2002, DocType::article, "j1", {"ROSSI, M"}, {"Univ Roma Tor Vergata"}}};
    const auto r = disambiguate_corpus(pubs, reg, dict);
    CHECK(r.stats == DisambiguationStats{3, 1, 0, 0, 2});
    CHECK_FALSE(r.publications[0].error.empty());
    CHECK(r.publications[2].category == Category::resolved);
  }
  SUBCASE("staff outside the address list never match") {
    const std::vector<Publication> pubs{
        {"p1", 2002, DocType::article, "j1", {"ROSSI, M"}, {"Univ Roma La Sapienza"}}};
    const auto r = disambiguate_corpus(pubs, reg, dict);
    CHECK(r.stats.discarded == 1);
    CHECK(r.assignments[0].outcome.kind == OutcomeKind::unmatched);
  }
}

TEST_CASE("disambiguate_corpus: ten records with two planted homonyms") {
  const StaffRegistry reg({
      staff("a1", "Rossi", "Mario", "UA"),
      staff("a2", "Bianchi", "Luca", "UA"),
      staff("a3", "Ferrari", "Giulia", "UA"),
      staff("b1", "Rossi", "Marta", "UB"),
      staff("b2", "Esposito", "Carlo", "UB"),
      staff("b3", "Romano", "Sara", "UB"),
      staff("b4", "Romano", "Silvio Ivo", "UB"),
      staff("c1", "Colombo", "Paolo", "UC"),
  });
  AffiliationDictionary dict;
  dict.add("UNIV ALFA", "UA");
  dict.add("UNIV BETA", "UB");
  dict.add("UNIV GAMMA", "UC");

  const std::vector<Publication> pubs{
      {"p01", 2001, DocType::article, "j", {"ROSSI, M", "BIANCHI, L"}, {"Univ Alfa"}},
      {"p02", 2001, DocType::article, "j", {"ROSSI, M", "ESPOSITO, C"}, {"Univ Alfa", "Univ Beta"}},
      {"p03", 2002, DocType::review, "j", {"FERRARI, G"}, {"Univ Alfa"}},
      {"p04", 2002, DocType::article, "j", {"ROSSI, M"}, {"Univ Beta"}},
      {"p05", 2002, DocType::article, "j", {"ROMANO, S", "ESPOSITO, C"}, {"Univ Beta"}},
      {"p06", 2003, DocType::article, "j", {"COLOMBO, P", "SMITH, J"}, {"Univ Gamma"}},
      {"p07", 2003, DocType::article, "j", {"ROMANO, S.I.", "COLOMBO, P"}, {"Univ Beta", "Univ Gamma"}},
      {"p08", 2003, DocType::article, "j", {"BIANCHI, L", "FERRARI, G"}, {"Univ Alfa"}},
      {"p09", 2001, DocType::article, "j", {"ESPOSITO, C"}, {"Univ Beta"}},
      {"p10", 2001, DocType::article, "j", {"COLOMBO, P", "ROSSI, M"}, {"Univ Gamma"}},
  };
  const auto r = disambiguate_corpus(pubs, reg, dict);

  // Hand-built ground truth: "-" unmatched, "?x|y" ambiguous between x and y.
  const std::vector<std::vector<std::string>> truth{
      {"a1", "a2"}, {"?a1|b1", "b2"}, {"a3"}, {"b1"}, {"?b3|b4", "b2"},
      {"c1", "-"},  {"b4", "c1"},     {"a2", "a3"}, {"b2"}, {"c1", "-"}};
  std::size_t k = 0;
  for (std::size_t p = 0; p < truth.size(); ++p) {
    for (const auto& want : truth[p]) {
      REQUIRE(k < r.assignments.size());
      const auto& a = r.assignments[k++];
      CAPTURE(a.publication);
      CAPTURE(a.position);
      if (want == "-") {
        CHECK(a.outcome.kind == OutcomeKind::unmatched);
      } else if (want.front() == '?') {
        CHECK(a.outcome.kind == OutcomeKind::ambiguous);
        const auto ids = text::split(want.substr(1), '|');
        CHECK(a.outcome.candidates == std::vector<StaffId>(ids.begin(), ids.end()));
      } else {
        CHECK(a.outcome == MatchOutcome::matched(want));
      }
    }
  }
  CHECK(k == r.assignments.size());
  CHECK(r.stats == DisambiguationStats{10, 8, 2, 0, 0});
  CHECK(r.stats.partitions());
  REQUIRE(r.manual_review.size() == 2);
  CHECK(r.manual_review[0].publication == "p02");
  CHECK(r.manual_review[1].publication == "p05");

  SUBCASE("overrides resolve the manual cases") {
    const std::vector<ManualOverride> ov{{"p02", 1, StaffId{"a1"}}, {"p05", 1, std::nullopt}};
    const auto again = disambiguate_corpus(pubs, reg, dict, ov);
    CHECK(again.stats == DisambiguationStats{10, 10, 0, 0, 0});
    CHECK(again.assignments[2].outcome == MatchOutcome::matched("a1"));
    CHECK(again.assignments[2].from_override);
    CHECK(again.warnings.empty());
  }
  SUBCASE("overrides outside the address list are ignored") {
    const std::vector<ManualOverride> ov{{"p02", 1, StaffId{"c1"}}, {"p99", 1, StaffId{"a1"}}};
    const auto again = disambiguate_corpus(pubs, reg, dict, ov);
    CHECK(again.stats.manual_review == 2);
    CHECK(again.warnings.size() == 2);
  }
  SUBCASE("deterministic") {
    const auto again = disambiguate_corpus(pubs, reg, dict);
    REQUIRE(again.assignments.size() == r.assignments.size());
    for (std::size_t i = 0; i < r.assignments.size(); ++i) {
      CHECK(again.assignments[i].outcome == r.assignments[i].outcome);
    }
  }
}
