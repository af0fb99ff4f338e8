#include "s2h/core/record.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "s2h/core/digest.hpp"
#include "s2h/core/error.hpp"

namespace s2h {

using ojson = nlohmann::ordered_json;

std::string_view convert_prompt() { return "Convert the provided image to text."; }

namespace {

void validate_segments(const std::vector<Segment>& segs) {
  std::size_t i = 0;
  auto expect = [&](SegmentKind k) {
    if (i >= segs.size() || segs[i].kind != k)
      throw InvalidArgument(std::string("record segments: expected ") + std::string(to_string(k)) +
                            " at position " + std::to_string(i));
    ++i;
  };
  expect(SegmentKind::Prompt);
  if (i < segs.size() && segs[i].kind == SegmentKind::ConvertPrompt) {
    if (segs[i].text != convert_prompt())
      throw InvalidArgument("record segments: conversion prompt text differs from the fixed string");
    ++i;
    expect(SegmentKind::ConvertedText);
  }
  expect(SegmentKind::Cot);
  expect(SegmentKind::Answer);
  if (i != segs.size()) throw InvalidArgument("record segments: trailing segments after answer");
}

ojson body_json(TaskKind task, Difficulty difficulty, Modality modality,
                const std::optional<std::string>& image_path, const std::vector<Segment>& segments,
                const Metadata& metadata) {
  ojson j;
  j["task"] = to_string(task);
  j["difficulty"] = to_string(difficulty);
  j["modality"] = to_string(modality);
  j["image_path"] = image_path ? ojson(*image_path) : ojson(nullptr);
  ojson segs = ojson::array();
  for (const Segment& s : segments)
    segs.push_back(ojson{{"kind", to_string(s.kind)}, {"text", s.text}, {"supervised", s.supervised}});
  j["segments"] = std::move(segs);
  ojson meta = ojson::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  return j;
}

}  // namespace

SupervisedRecord::SupervisedRecord(TaskKind task, Difficulty difficulty, Modality modality,
                                   std::optional<std::string> image_path,
                                   std::vector<Segment> segments, Metadata metadata)
    : task_(task),
      difficulty_(difficulty),
      modality_(modality),
      image_path_(std::move(image_path)),
      segments_(std::move(segments)),
      metadata_(std::move(metadata)) {
  require_difficulty_valid(task_, difficulty_);
  if (modality_ == Modality::ImageInput && !image_path_)
    throw InvalidArgument("image-input record requires an image path");
  if (modality_ == Modality::TextInput && image_path_)
    throw InvalidArgument("text-input record must not carry an image path");
  validate_segments(segments_);
  for (Segment& s : segments_) s.supervised = is_supervised(s.kind, s.text.empty());
  id_ = sha256_hex(canonical_body()).substr(0, 16);
}

std::string SupervisedRecord::canonical_body() const {
  return body_json(task_, difficulty_, modality_, image_path_, segments_, metadata_).dump();
}

const Segment* SupervisedRecord::find(SegmentKind kind) const {
  for (const Segment& s : segments_)
    if (s.kind == kind) return &s;
  return nullptr;
}

std::string SupervisedRecord::meta(const std::string& key, std::string fallback) const {
  auto it = metadata_.find(key);
  return it == metadata_.end() ? fallback : it->second;
}

std::string SupervisedRecord::output_text() const {
  std::string out;
  for (const Segment& s : segments_) {
    if (!s.supervised) continue;
    if (!out.empty()) out += '\n';
    out += s.text;
  }
  return out;
}

std::string SupervisedRecord::to_jsonl() const {
  ojson j;
  j["id"] = id_;
  const ojson body = body_json(task_, difficulty_, modality_, image_path_, segments_, metadata_);
  for (auto& [k, v] : body.items()) j[k] = v;
  return j.dump();
}

SupervisedRecord parse_record(std::string_view line) {
  ojson j;
  try {
    j = ojson::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("record: invalid JSON: ") + e.what());
  }
  try {
    std::optional<std::string> image;
    if (!j.at("image_path").is_null()) image = j.at("image_path").get<std::string>();
    std::vector<Segment> segs;
    for (const auto& s : j.at("segments"))
      segs.push_back({parse_segment_kind(s.at("kind").get<std::string>()), s.at("text").get<std::string>(),
                      s.at("supervised").get<bool>()});
    Metadata meta;
    for (const auto& [k, v] : j.at("metadata").items()) meta[k] = v.get<std::string>();
    SupervisedRecord rec(parse_task(j.at("task").get<std::string>()),
                         parse_difficulty(j.at("difficulty").get<std::string>()),
                         parse_modality(j.at("modality").get<std::string>()), std::move(image),
                         segs, std::move(meta));
    for (std::size_t i = 0; i < segs.size(); ++i)
      if (segs[i].supervised != rec.segments()[i].supervised)
        throw ParseError("record: supervised flag inconsistent with segment content");
    if (rec.id() != j.at("id").get<std::string>())
      throw ParseError("record: id " + j.at("id").get<std::string>() + " does not match content");
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("record: schema violation: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("record: ") + e.what());
  }
}

std::vector<SupervisedRecord> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<SupervisedRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

void write_jsonl(const std::string& path, const std::vector<SupervisedRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << to_jsonl(records);
  if (!out) throw IoError("write failed: " + path);
}

std::string to_jsonl(const std::vector<SupervisedRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.to_jsonl();
    out += '\n';
  }
  return out;
}

}  // namespace s2h
