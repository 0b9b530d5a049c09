// Copyright 2026 The Medlink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <gtest/gtest.h>

#include "medlink/base/error.h"
#include "medlink/base/io.h"
#include "medlink/preprocess/abbreviations.h"
#include "medlink/preprocess/corpus.h"
#include "medlink/preprocess/iob2.h"
#include "medlink/preprocess/mentions.h"
#include "medlink/preprocess/pubtator.h"
#include "medlink/preprocess/tokenizer.h"
#include "test-util.h"

namespace medlink {
namespace {

using testing::MakeDocument;
using testing::MakeMention;

std::vector<std::string> SentenceTokens(const Document &doc, int s) {
  std::vector<std::string> out;
  for (int i = 0; i < doc.sentences[s].size(); ++i) {
    out.push_back(doc.At(s, i).text);
  }
  return out;
}

RawMention Raw(const std::string &text, const std::string &doc_text,
               const std::string &entity, size_t from = 0) {
  RawMention m;
  m.begin = static_cast<int>(doc_text.find(text, from));
  m.end = m.begin + static_cast<int>(text.size());
  m.text = text;
  m.type_id = "T007";
  m.entity_id = entity;
  return m;
}

TEST(TokenizerTest, TwoSentences) {
  Document doc = MakeDocument("d", "Flu kills. It spreads.");
  ASSERT_EQ(doc.sentences.size(), 2u);
  EXPECT_EQ(SentenceTokens(doc, 0),
            (std::vector<std::string>{"Flu", "kills", "."}));
  EXPECT_EQ(SentenceTokens(doc, 1),
            (std::vector<std::string>{"It", "spreads", "."}));
}

TEST(TokenizerTest, ProtectedAbbreviationKeepsSentence) {
  TokenizerOptions options;
  options.protected_abbreviations.insert("E.");
  Document doc = SegmentAndTokenize("d", "E. coli grows.", options);
  EXPECT_EQ(doc.sentences.size(), 1u);
}

TEST(TokenizerTest, EmptyText) {
  Document doc = MakeDocument("d", "");
  EXPECT_TRUE(doc.sentences.empty());
  EXPECT_TRUE(doc.tokens.empty());
}

TEST(TokenizerTest, OffsetsPointIntoText) {
  Document doc = MakeDocument("d", "IL-2 levels (n=4) rose, e.g. in mice.");
  for (const Token &t : doc.tokens) {
    EXPECT_EQ(doc.text.substr(t.begin, t.end - t.begin), t.text);
  }
}

TEST(TokenizerTest, TitleEndsASentence) {
  Document doc = SegmentAndTokenize("d", "Flu in mice Influenza spreads.",
                                    TokenizerOptions(), 11);
  EXPECT_EQ(doc.sentences.size(), 2u);
}

TEST(AbbreviationTest, DetectsDottedShortForm) {
  auto defs = DetectAbbreviations(
      "runoff of phosphorus and Escherichia coli (E. coli) in overland flow");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].short_form, "E. coli");
  EXPECT_EQ(defs[0].long_form, "Escherichia coli");
}

TEST(AbbreviationTest, DetectsInitials) {
  auto defs =
      DetectAbbreviations("using high resolution mass spectrometry (HRMS) we");
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].short_form, "HRMS");
  EXPECT_EQ(defs[0].long_form, "high resolution mass spectrometry");
}

TEST(AbbreviationTest, NoAlignmentNoDefinition) {
  EXPECT_TRUE(DetectAbbreviations("as shown (see Figure 2) above").empty());
}

TEST(AbbreviationTest, ExpansionRewritesTextAndMentions) {
  RawDocument doc;
  doc.id = "1";
  doc.title = "Runoff.";
  doc.abstract =
      "We studied phosphorus and Escherichia coli (E. coli) in overland "
      "flow. E. coli persisted.";
  std::string text = doc.Text();
  doc.mentions.push_back(Raw("Escherichia coli", text, "C0014834"));
  doc.mentions.push_back(Raw("E. coli", text, "C0014834"));
  doc.mentions.push_back(
      Raw("E. coli", text, "C0014834", text.find("flow")));
  ExpansionStats stats;
  ExpandedText out =
      ExpandAbbreviations(doc, DetectAbbreviations(text), &stats);
  EXPECT_NE(out.text.find("phosphorus and Escherichia coli in overland"),
            std::string::npos);
  EXPECT_NE(out.text.find("flow. Escherichia coli persisted."),
            std::string::npos);
  EXPECT_EQ(stats.dropped_mentions, 1);
  ASSERT_EQ(out.mentions.size(), 2u);
  for (const RawMention &m : out.mentions) {
    EXPECT_EQ(out.text.substr(m.begin, m.end - m.begin), "Escherichia coli");
    EXPECT_EQ(m.entity_id, "C0014834");
  }
}

TEST(AbbreviationTest, NoDefinitionsIsIdentity) {
  RawDocument doc;
  doc.id = "1";
  doc.title = "Title.";
  doc.abstract = "Nothing (here) to expand.";
  ExpansionStats stats;
  ExpandedText out = ExpandAbbreviations(doc, {}, &stats);
  EXPECT_EQ(out.text, doc.Text());
  EXPECT_EQ(stats.replacements, 0);
}

TEST(MentionsTest, LongerMentionWins) {
  std::vector<Mention> in = {MakeMention(0, 0, 5, "A"),
                             MakeMention(0, 2, 8, "B")};
  int dropped = 0;
  auto out = ResolveOverlappingMentions(in, &dropped);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].start, 2);
  EXPECT_EQ(out[0].end, 8);
  EXPECT_EQ(dropped, 1);
}

TEST(MentionsTest, DuplicateSpanKeepsFirstEntity) {
  auto out = ResolveOverlappingMentions(
      {MakeMention(0, 0, 3, "C9"), MakeMention(0, 0, 3, "C1")});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].entity_id, "C1");
}

TEST(MentionsTest, DisjointUnchanged) {
  std::vector<Mention> in = {MakeMention(0, 0, 2, "A"),
                             MakeMention(0, 3, 4, "B"),
                             MakeMention(1, 0, 2, "C")};
  EXPECT_EQ(ResolveOverlappingMentions(in), in);
}

TEST(MentionsTest, OutputIsOverlapFree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Mention> in;
    for (int i = 0; i < 8; ++i) {
      int s = std::uniform_int_distribution<int>(0, 10)(rng);
      int len = std::uniform_int_distribution<int>(1, 4)(rng);
      in.push_back(MakeMention(0, s, s + len, "C" + std::to_string(i)));
    }
    EXPECT_TRUE(IsOverlapFree(ResolveOverlappingMentions(in)));
  }
}

TEST(Iob2Test, TagsAndRoundTrip) {
  Document doc = MakeDocument("d1", "He had a heart attack. Fine.");
  doc.mentions.push_back(MakeMention(0, 3, 5, "C0027051", "T038"));
  std::ostringstream out;
  WriteIob2(out, doc);
  std::string s = out.str();
  EXPECT_NE(s.find("heart\tB-T038|C0027051\n"), std::string::npos);
  EXPECT_NE(s.find("attack\tI-T038|C0027051\n"), std::string::npos);
  EXPECT_NE(s.find("He\tO\n"), std::string::npos);
  std::istringstream in(s);
  auto back = ReadIob2(in);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].id, "d1");
  EXPECT_EQ(back[0].mentions, doc.mentions);
  EXPECT_EQ(back[0].sentences.size(), doc.sentences.size());
}

TEST(Iob2Test, OverlapRejected) {
  Document doc = MakeDocument("d1", "a b c");
  doc.mentions = {MakeMention(0, 0, 2, "A"), MakeMention(0, 1, 3, "B")};
  std::ostringstream out;
  EXPECT_THROW(WriteIob2(out, doc), Error);
}

TEST(PubTatorTest, RoundTrip) {
  std::string text =
      "123|t|Flu in mice.\n123|a|Influenza virus spreads.\n"
      "123\t0\t3\tFlu\tT047\tC1\n123\t13\t28\tInfluenza virus\tT005\tUMLS:C2\n"
      "\n";
  std::istringstream in(text);
  auto docs = ReadPubTator(in);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].title, "Flu in mice.");
  ASSERT_EQ(docs[0].mentions.size(), 2u);
  EXPECT_EQ(docs[0].mentions[1].entity_id, "C2");
  EXPECT_EQ(docs[0].Text().substr(13, 15), "Influenza virus");
  std::ostringstream out;
  WritePubTator(out, docs);
  std::istringstream again(out.str());
  auto back = ReadPubTator(again);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].mentions, docs[0].mentions);
  EXPECT_EQ(back[0].abstract, docs[0].abstract);
}

TEST(CorpusTest, PipelineCountsDrops) {
  RawDocument raw;
  raw.id = "7";
  raw.title = "Lung disease.";
  raw.abstract =
      "Chronic obstructive pulmonary disease (COPD) is common. COPD kills.";
  std::string text = raw.Text();
  raw.mentions.push_back(
      Raw("Chronic obstructive pulmonary disease", text, "C1"));
  raw.mentions.push_back(Raw("COPD", text, "C1"));
  raw.mentions.push_back(Raw("COPD", text, "C1", text.find("common")));
  raw.mentions.push_back(Raw("Lung disease", text, "C2"));
  raw.mentions.push_back(Raw("disease", text, "C3"));
  PreprocessReport report;
  Document doc = PreprocessDocument(raw, PreprocessOptions(), &report);
  EXPECT_EQ(report.raw_mentions, 5);
  EXPECT_EQ(report.dropped_at_definition, 1);
  EXPECT_EQ(report.dropped_overlap, 1);
  EXPECT_EQ(report.kept_mentions, 3);
  EXPECT_EQ(doc.dropped_mentions, 2);
  EXPECT_EQ(doc.raw_entities, (std::vector<std::string>{"C1", "C2", "C3"}));
  EXPECT_TRUE(IsOverlapFree(doc.mentions));
  EXPECT_NE(doc.text.find("Chronic obstructive pulmonary disease kills."),
            std::string::npos);
}

TEST(CorpusTest, ExternalDefinitionsReplaceDetector) {
  RawDocument raw;
  raw.id = "8";
  raw.title = "T.";
  raw.abstract = "We used mass spectrometry (MS). MS worked.";
  PreprocessOptions options;
  options.detect_abbreviations = false;
  PreprocessReport report;
  Document plain = PreprocessDocument(raw, options, &report);
  EXPECT_EQ(report.abbreviation_definitions, 0);
  EXPECT_NE(plain.text.find("MS worked"), std::string::npos);

  AbbrevDefinition def;
  def.short_form = "MS";
  def.long_form = "mass spectrometry";
  options.external_abbreviations["8"] = {def};
  PreprocessReport report2;
  Document expanded = PreprocessDocument(raw, options, &report2);
  EXPECT_EQ(report2.abbreviation_definitions, 1);
  EXPECT_NE(expanded.text.find("mass spectrometry worked"), std::string::npos);
}

TEST(CorpusTest, DocumentsRoundTrip) {
  Document doc = MakeDocument("d", "Heart attack. Stroke.");
  doc.mentions.push_back(MakeMention(0, 0, 2, "C1"));
  doc.raw_entities = {"C1", "C2"};
  doc.dropped_mentions = 1;
  std::string dir = testing::ScratchDir("docs-roundtrip");
  WriteDocuments(dir + "/docs.jsonl", {doc});
  auto back = ReadDocuments(dir + "/docs.jsonl");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].text, doc.text);
  EXPECT_EQ(back[0].tokens, doc.tokens);
  EXPECT_EQ(back[0].sentences, doc.sentences);
  EXPECT_EQ(back[0].mentions, doc.mentions);
  EXPECT_EQ(back[0].raw_entities, doc.raw_entities);
  EXPECT_EQ(back[0].dropped_mentions, 1);
}

}  // namespace
}  // namespace medlink
