#include <doctest.h>

#include <algorithm>
#include <regex>
#include <set>

#include "esgdoc/errors.hpp"
#include "esgdoc/ingestion.hpp"
#include "generators.hpp"

using namespace esgdoc;
using namespace esgdoc::testing;

namespace {

LayoutBlock text_block(std::string text, int page, std::optional<BBox> box = std::nullopt,
                       std::optional<double> font = std::nullopt) {
  LayoutBlock b;
  b.page = page;
  b.text = std::move(text);
  b.bbox = box;
  b.font_size = font;
  return b;
}

// Brute-force reading order for small pages: among all permutations, the one
// whose consecutive pairs respect (column, y0, x0), with columns derived from
// pairwise gap counting rather than a running cluster index.
std::vector<std::size_t> brute_force_order(const std::vector<LayoutBlock>& blocks) {
  auto column = [&](const LayoutBlock& b) {
    std::vector<double> xs;
    for (const auto& o : blocks) xs.push_back(o.bbox->x0);
    std::sort(xs.begin(), xs.end());
    int gaps = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] <= b.bbox->x0 && xs[i] - xs[i - 1] > 0.15) ++gaps;
    }
    return gaps;
  };
  std::vector<std::size_t> perm(blocks.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::vector<std::size_t> found;
  int matches = 0;
  do {
    bool ok = true;
    for (std::size_t i = 1; i < perm.size() && ok; ++i) {
      const auto& a = blocks[perm[i - 1]];
      const auto& b = blocks[perm[i]];
      const auto ka = std::make_tuple(column(a), a.bbox->y0, a.bbox->x0);
      const auto kb = std::make_tuple(column(b), b.bbox->y0, b.bbox->x0);
      ok = ka < kb || (ka == kb && perm[i - 1] < perm[i]);
    }
    if (ok) {
      found = perm;
      ++matches;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  REQUIRE(matches == 1);
  return found;
}

// Header/footer oracle: for each band block, count pages directly by scanning
// every other block.
std::vector<BandMark> brute_force_marks(const std::vector<LayoutBlock>& blocks,
                                        const ClassifierThresholds& th) {
  auto band_of = [&](const LayoutBlock& b) {
    if (!b.bbox || !b.text || b.table || b.image) return BandMark::Body;
    if (b.bbox->y1 <= th.header_band) return BandMark::Header;
    if (b.bbox->y0 >= 1 - th.footer_band) return BandMark::Footer;
    return BandMark::Body;
  };
  auto masked = [](const std::string& s) {
    auto out = std::regex_replace(s, std::regex("[0-9]+"), "#");
    out = std::regex_replace(out, std::regex("\\s+"), " ");
    out = std::regex_replace(out, std::regex("^ | $"), "");
    return out;
  };
  static const std::regex kPage(R"(^\s*(page\s+)?[0-9]+(\s+of\s+[0-9]+)?\s*$)", std::regex::icase);
  std::vector<BandMark> out;
  for (const auto& b : blocks) {
    const auto band = band_of(b);
    if (band == BandMark::Body) {
      out.push_back(BandMark::Body);
      continue;
    }
    std::set<int> pages;
    for (const auto& o : blocks) {
      if (o.page != b.page && band_of(o) == band && masked(*o.text) == masked(*b.text)) {
        pages.insert(o.page);
      }
    }
    const bool mark = pages.size() >= th.repeat_min_pages || std::regex_match(*b.text, kPage);
    out.push_back(mark ? band : BandMark::Body);
  }
  return out;
}

}  // namespace

TEST_SUITE("ingestion") {

TEST_CASE("ingest_blocks keeps file order") {
  const auto blocks = ingest_blocks(R"({"schema_version":1,"source":"t","blocks":[
      {"page":1,"text":"A"},{"page":1,"text":"B","bbox":[0.1,0.2,0.9,0.3],"font_size":12.0},
      {"page":2,"kind_hint":"image","image":{"media_type":"image/png","data_base64":"YWJj"}}]})");
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].text == "A");
  CHECK(blocks[1].text == "B");
  CHECK(blocks[1].bbox == BBox{0.1, 0.2, 0.9, 0.3});
  CHECK(blocks[1].font_size == 12.0);
  REQUIRE(blocks[2].image.has_value());
  CHECK(blocks[2].image->data == std::vector<std::uint8_t>{'a', 'b', 'c'});
  CHECK_FALSE(blocks[2].image->alt_text.has_value());
}

TEST_CASE("ingest_blocks error paths") {
  CHECK_THROWS_AS(ingest_blocks(R"({"schema_version":2,"blocks":[]})"), UnsupportedVersionError);

  try {
    ingest_blocks(R"({"schema_version":1,"blocks":[{"page":1,"text":"a"},{"page":1}]})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.index() == 1);
  }

  try {
    ingest_blocks(R"({"schema_version":1,"blocks":[}")");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() >= 29);
    CHECK(e.byte_offset() <= 31);
  }

  auto index_of_failure = [](const char* raw) -> long {
    try {
      ingest_blocks(raw);
    } catch (const ValidationError& e) {
      return static_cast<long>(e.index());
    }
    return -1;
  };
  CHECK(index_of_failure(R"({"schema_version":1,"blocks":[{"page":1,"text":"a","bbox":[0.5,0,0.4,1]}]})") == 0);
  CHECK(index_of_failure(R"({"schema_version":1,"blocks":[{"page":0,"text":"a"}]})") == 0);
  CHECK(index_of_failure(R"({"schema_version":1,"blocks":[{"page":1,"text":"a","font_size":-1}]})") == 0);
  CHECK(index_of_failure(
            R"({"schema_version":1,"blocks":[{"page":1,"text":"a"},{"page":1,"kind_hint":"text","table":{"n_rows":1,"n_cols":1,"cells":[{"row":0,"col":0,"text":"x"}]}}]})") == 1);
  CHECK(index_of_failure(
            R"({"schema_version":1,"blocks":[{"page":1,"image":{"media_type":"image/png","data_base64":"not base64!"}}]})") == 0);
  CHECK(index_of_failure(
            R"({"schema_version":1,"blocks":[{"page":1,"table":{"n_rows":1,"n_cols":2,"cells":[{"row":0,"col":0,"text":"x"}]}}]})") == 0);
  CHECK_THROWS_AS(ingest_blocks("{\"schema_version\":1,\"blocks\":[{\"page\":1,\"text\":\"\xff\"}]}"),
                  EncodingError);
}

TEST_CASE("table header_rows is inferred when absent") {
  const auto blocks = ingest_blocks(R"({"schema_version":1,"blocks":[
      {"page":1,"table":{"n_rows":2,"n_cols":2,"cells":[
        {"row":0,"col":0,"text":"Metric"},{"row":0,"col":1,"text":"2021"},
        {"row":1,"col":0,"text":"Water"},{"row":1,"col":1,"text":"12"}]}},
      {"page":1,"table":{"n_rows":2,"n_cols":2,"cells":[
        {"row":0,"col":0,"text":"Metric"},{"row":0,"col":1,"text":"FY21"},
        {"row":1,"col":0,"text":"Water"},{"row":1,"col":1,"text":"12"}]}}]})");
  CHECK(blocks[0].table->header_rows == 0);
  CHECK(blocks[1].table->header_rows == 1);
}

TEST_CASE("ingest_plaintext splits on blank lines and form feeds") {
  auto blocks = ingest_plaintext("A\n\nB");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].text == "A");
  CHECK(blocks[1].text == "B");
  CHECK(blocks[0].page == 1);
  CHECK_FALSE(blocks[0].bbox.has_value());
  CHECK_FALSE(blocks[0].font_size.has_value());

  blocks = ingest_plaintext("A\fB");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].page == 1);
  CHECK(blocks[1].page == 2);

  CHECK(ingest_plaintext("").empty());
  CHECK(ingest_plaintext("\n \n\t\n").empty());

  blocks = ingest_plaintext("line one\r\nline two\r\n   \r\nnext\f\fthird");
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0].text == "line one\nline two");
  CHECK(blocks[2].page == 3);

  CHECK_THROWS_AS(ingest_plaintext("ok\xc3("), EncodingError);
}

TEST_CASE("reading_order single column stays top to bottom") {
  std::vector<LayoutBlock> blocks{text_block("a", 1, BBox{0.1, 0.2, 0.9, 0.25}),
                                  text_block("b", 1, BBox{0.1, 0.5, 0.9, 0.55}),
                                  text_block("c", 1, BBox{0.1, 0.8, 0.9, 0.85})};
  const auto ordered = reading_order(blocks);
  CHECK(ordered == blocks);
}

TEST_CASE("reading_order two columns matches brute force") {
  const std::vector<LayoutBlock> blocks{text_block("R1", 1, BBox{0.55, 0.1, 0.95, 0.2}),
                                        text_block("L2", 1, BBox{0.05, 0.5, 0.45, 0.6}),
                                        text_block("L1", 1, BBox{0.05, 0.1, 0.45, 0.2})};
  const auto expected = brute_force_order(blocks);
  std::vector<std::string> oracle;
  for (auto i : expected) oracle.push_back(*blocks[i].text);
  CHECK(oracle == std::vector<std::string>{"L1", "L2", "R1"});

  std::vector<std::string> got;
  for (const auto& b : reading_order(blocks)) got.push_back(*b.text);
  CHECK(got == oracle);
}

TEST_CASE("reading_order without bboxes keeps input order per page") {
  std::vector<LayoutBlock> blocks{text_block("p2a", 2), text_block("p1a", 1),
                                  text_block("p2b", 2), text_block("p1b", 1)};
  std::vector<std::string> got;
  for (const auto& b : reading_order(blocks)) got.push_back(*b.text);
  CHECK(got == std::vector<std::string>{"p1a", "p1b", "p2a", "p2b"});

  blocks = {text_block("loose", 1), text_block("placed", 1, BBox{0.1, 0.5, 0.2, 0.6})};
  got.clear();
  for (const auto& b : reading_order(blocks)) got.push_back(*b.text);
  CHECK(got == std::vector<std::string>{"placed", "loose"});
}

TEST_CASE("reading_order is a permutation matching brute force (property)") {
  Rng rng(11);
  for (int round = 0; round < 300; ++round) {
    std::vector<LayoutBlock> blocks;
    const auto n = 1 + below(rng, 6);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(below(rng, 9)) / 10.0;
      const double y = static_cast<double>(below(rng, 9)) / 10.0;
      blocks.push_back(text_block("b" + std::to_string(i), 1, BBox{x, y, x + 0.05, y + 0.05}));
    }
    const auto ordered = reading_order(blocks);
    const auto expected = brute_force_order(blocks);
    REQUIRE(ordered.size() == blocks.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(ordered[i] == blocks[expected[i]]);
  }
}

TEST_CASE("mask_digits and page number pattern") {
  CHECK(mask_digits("Walmart ESG 2023 | 14") == "Walmart ESG # | #");
  CHECK(is_page_number("Page 7 of 40"));
  CHECK(is_page_number(" page 7 "));
  CHECK(is_page_number("12"));
  CHECK(is_page_number("PAGE 3 OF 9"));
  CHECK_FALSE(is_page_number("Page seven"));
  CHECK_FALSE(is_page_number("Chapter 7"));
}

TEST_CASE("detect_headers_footers examples") {
  const ClassifierThresholds th;
  std::vector<LayoutBlock> blocks;
  for (int page = 1; page <= 10; ++page) {
    blocks.push_back(text_block("Walmart ESG 2023", page, BBox{0.1, 0.0, 0.5, 0.05}));
    blocks.push_back(text_block("Body paragraph " + std::to_string(page) + ".", page,
                                BBox{0.1, 0.3, 0.9, 0.5}));
  }
  blocks.push_back(text_block("Page 7 of 40", 7, BBox{0.4, 0.96, 0.6, 0.99}));
  blocks.push_back(text_block("A unique sentence sits high on page three.", 3,
                              BBox{0.5, 0.02, 0.9, 0.05}));
  const auto marks = detect_headers_footers(blocks, th);
  for (int page = 0; page < 10; ++page) {
    CHECK(marks[2 * page] == BandMark::Header);
    CHECK(marks[2 * page + 1] == BandMark::Body);
  }
  CHECK(marks[20] == BandMark::Footer);
  CHECK(marks[21] == BandMark::Body);
  CHECK(marks == brute_force_marks(blocks, th));
}

TEST_CASE("blocks without bbox are never marked") {
  std::vector<LayoutBlock> blocks;
  for (int page = 1; page <= 5; ++page) blocks.push_back(text_block("Page 1", page));
  for (auto m : detect_headers_footers(blocks, {})) CHECK(m == BandMark::Body);
}

TEST_CASE("band marks match the brute-force oracle and survive unique pages (property)") {
  Rng rng(5);
  const char* const kBandTexts[] = {"Report 2023", "Report 2024", "Acme", "Page 3 of 9",
                                    "Section 1", "Section 12", "note"};
  const ClassifierThresholds th;
  for (int round = 0; round < 300; ++round) {
    std::vector<LayoutBlock> blocks;
    const int pages = 1 + static_cast<int>(below(rng, 6));
    for (int page = 1; page <= pages; ++page) {
      const auto n = below(rng, 5);
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto where = below(rng, 3);
        const double y0 = where == 0 ? 0.01 : where == 1 ? 0.95 : 0.4;
        blocks.push_back(text_block(kBandTexts[below(rng, std::size(kBandTexts))], page,
                                    BBox{0.1, y0, 0.5, y0 + 0.03}));
      }
    }
    const auto marks = detect_headers_footers(blocks, th);
    REQUIRE(marks == brute_force_marks(blocks, th));

    auto extended = blocks;
    for (int extra = 1; extra <= 3; ++extra) {
      const int page = pages + extra;
      extended.push_back(text_block("unique top words " + std::string(static_cast<std::size_t>(extra), 'q'),
                                    page, BBox{0.1, 0.01, 0.5, 0.04}));
      extended.push_back(text_block("unique bottom words " + std::string(static_cast<std::size_t>(extra), 'w'),
                                    page, BBox{0.1, 0.95, 0.5, 0.98}));
    }
    const auto extended_marks = detect_headers_footers(extended, th);
    REQUIRE(std::equal(marks.begin(), marks.end(), extended_marks.begin()));
  }
}

TEST_CASE("body_font_size is the median of text blocks") {
  std::vector<LayoutBlock> blocks{text_block("a", 1, std::nullopt, 10.0),
                                  text_block("b", 1, std::nullopt, 14.0),
                                  text_block("c", 1, std::nullopt, 9.0)};
  CHECK(body_font_size(blocks) == 10.0);
  blocks.push_back(text_block("d", 1, std::nullopt, 12.0));
  CHECK(body_font_size(blocks) == 11.0);
  CHECK_FALSE(body_font_size({text_block("x", 1)}).has_value());
}

TEST_CASE("classify examples") {
  CHECK(classify(text_block("FY2023 HIGHLIGHTS", 1), std::nullopt).kind == ElementKind::Title);
  CHECK(classify(text_block("FY2023 HIGHLIGHTS", 1, std::nullopt, 16.0), 10.0).kind ==
        ElementKind::Title);
  CHECK(classify(text_block("Assessed ~13,100 third-party responsible sourcing facility audit "
                            "reports³³",
                            1, std::nullopt, 10.0),
                 10.0)
            .kind == ElementKind::NarrativeText);
  CHECK(classify(text_block("● Implement globally unified initiatives…", 1), std::nullopt).kind ==
        ElementKind::ListItem);
}

TEST_CASE("classify precedence and clauses") {
  const ClassifierThresholds th;
  auto kind_of = [&](std::string text, std::optional<double> font = std::nullopt,
                     std::optional<double> body = std::nullopt) {
    return classify(text_block(std::move(text), 1, std::nullopt, font), body, th).kind;
  };
  CHECK(kind_of("- dash item") == ElementKind::ListItem);
  CHECK(kind_of("* star item") == ElementKind::ListItem);
  CHECK(kind_of("12. numbered item") == ElementKind::ListItem);
  CHECK(kind_of("• bullet") == ElementKind::ListItem);
  CHECK(kind_of("-5% year over year") != ElementKind::ListItem);
  CHECK(kind_of("Scope 1 emissions:") == ElementKind::UncategorizedText);
  CHECK(kind_of("This sentence ends with a period.") == ElementKind::NarrativeText);
  CHECK(kind_of("2019: 45% vs 2020: 50%.)") == ElementKind::NarrativeText);
  CHECK(kind_of("2019 2020 2021 0.042") == ElementKind::UncategorizedText);
  CHECK(kind_of("") == ElementKind::UncategorizedText);
  std::string long_line;
  for (int i = 0; i < 21; ++i) long_line += "word ";
  CHECK(kind_of(long_line) == ElementKind::NarrativeText);
  // Font ratio boundary: 11.0 >= 1.1 * 10.0 but 10.9 is not.
  CHECK(kind_of("Climate Change", 11.0, 10.0) == ElementKind::Title);
  CHECK(kind_of("Climate Change", 10.9, 10.0) == ElementKind::NarrativeText);
}

TEST_CASE("classify tables and images") {
  LayoutBlock table;
  table.table = simple_grid({{"a", "b"}, {"c", "d"}});
  const auto t = classify(table, std::nullopt);
  CHECK(t.kind == ElementKind::Table);
  CHECK(t.text == "a b\nc d");
  CHECK(t.metadata.text_as_html.has_value());

  LayoutBlock image;
  image.image = ImagePayload{"image/png", {1, 2}, std::nullopt};
  image.text = "ignored";
  CHECK(classify(image, std::nullopt).kind == ElementKind::Image);
}

TEST_CASE("classify is total and deterministic (property)") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    auto block = text_block(random_text(rng, 120), 1, std::nullopt,
                            chance(rng, 50) ? std::optional<double>(8.0 + static_cast<double>(below(rng, 10))) : std::nullopt);
    const auto a = classify(block, 10.0);
    const auto b = classify(block, 10.0);
    CHECK(a == b);
    CHECK(is_text_kind(a.kind));
    CHECK(a.text == *block.text);
  }
}

TEST_CASE("partition assigns ids, page breaks and filters bands") {
  std::vector<LayoutBlock> blocks;
  for (int page = 1; page <= 3; ++page) {
    blocks.push_back(text_block("Acme Report", page, BBox{0.1, 0.01, 0.4, 0.04}));
    blocks.push_back(text_block("Body text on this page.", page, BBox{0.1, 0.3, 0.9, 0.4}));
  }
  const auto filtered = partition(blocks, {}, false);
  const auto kept = partition(blocks, {}, true);
  REQUIRE(filtered.size() == 5);
  CHECK(filtered[0].id() == "e000002");
  CHECK(filtered[1].kind == ElementKind::PageBreak);
  CHECK(filtered[1].page() == 2);
  REQUIRE(kept.size() == 8);
  CHECK(kept[0].kind == ElementKind::Header);
  CHECK(kept[0].id() == "e000001");
  // Ids do not depend on filtering.
  for (const auto& el : filtered) {
    CHECK(std::any_of(kept.begin(), kept.end(), [&](const Element& k) { return k == el; }));
  }
}

}  // TEST_SUITE
