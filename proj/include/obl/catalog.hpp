#pragma once

#include <string>
#include <vector>

#include "obl/consistency.hpp"

namespace obl {

enum class Expected { CertificateFound, NoCertificate };
std::string expected_text(Expected e);

struct CatalogEntry {
  std::string name;
  std::string stanza;
  Expected expected = Expected::NoCertificate;
  SearchBudget budget;
  std::string note;
  bool surgery = false;  // expected verdict refers to the surgered book
};

const std::vector<CatalogEntry>& catalog();
/// Throws if there is no entry of that name.
const CatalogEntry& catalog_entry(const std::string& name);

/// Book and arcs to search over: Γ when the book carries one, otherwise the
/// standard basis, with the book moved onto the surface carrying its marks.
struct SearchInput {
  AugmentedOpenBook book;
  std::vector<Arc> basis;
};
SearchInput search_input(const AugmentedOpenBook& book);

}  // namespace obl
