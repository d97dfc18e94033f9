#include "iota/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "iota/csv.hpp"

namespace iota {

namespace {

bool parse_double(const std::string& s, double* out) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto res = std::from_chars(b, e, *out);
  return res.ec == std::errc() && res.ptr == e;
}

Verified parse_verified(const std::string& s, long line_no) {
  if (s.empty()) return Verified::Unverified;
  if (s == "1") return Verified::Correct;
  if (s == "0") return Verified::Incorrect;
  throw ParseError("bad verified flag '" + s + "' (expected 1, 0 or empty)", line_no);
}

std::string format_confidence(double c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", c);
  return buf;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> labels,
                       std::vector<std::int64_t> frequency, std::int64_t image_count)
    : labels_(std::move(labels)), frequency_(std::move(frequency)),
      image_count_(image_count) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i)
    index_.emplace(labels_[i], static_cast<int>(i));
}

std::optional<int> Vocabulary::id_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

AnnotationCorpus load_annotations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open annotation file: " + path);

  AnnotationCorpus corpus;
  std::unordered_map<std::string, std::size_t> image_index;

  std::string line;
  long line_no = 0;
  if (!std::getline(in, line))
    throw ParseError("empty annotation file: " + path, 1);
  ++line_no;
  auto header = csv::split_line(line);
  if (header.size() < 3 || header[0] != "image_id" || header[1] != "label" ||
      header[2] != "confidence")
    throw ParseError("bad header, expected image_id,label,confidence[,verified]",
                     line_no);

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = csv::split_line(line);
    if (fields.size() != 3 && fields.size() != 4)
      throw ParseError("expected 3 or 4 fields, got " +
                           std::to_string(fields.size()), line_no);
    const std::string& image_id = fields[0];
    const std::string& label = fields[1];
    if (image_id.empty()) throw ParseError("empty image_id", line_no);
    if (label.empty()) throw ParseError("empty label", line_no);
    double confidence;
    if (!parse_double(fields[2], &confidence))
      throw ParseError("bad confidence '" + fields[2] + "'", line_no);
    if (!(confidence >= 0.0 && confidence <= 1.0))
      throw ParseError("confidence " + fields[2] + " outside [0,1]", line_no);
    Verified verified =
        fields.size() == 4 ? parse_verified(fields[3], line_no) : Verified::Unverified;

    auto [it, inserted] = image_index.emplace(image_id, corpus.images.size());
    if (inserted) corpus.images.push_back(ImageAnnotations{image_id, {}});
    auto& labels = corpus.images[it->second].labels;
    auto existing = std::find_if(labels.begin(), labels.end(),
                                 [&](const Annotation& a) { return a.label == label; });
    if (existing == labels.end()) {
      labels.push_back(Annotation{label, confidence, verified});
    } else if (confidence > existing->confidence) {
      existing->confidence = confidence;
      existing->verified = verified;
    }
  }
  if (corpus.images.empty()) throw Error("empty corpus: " + path);
  return corpus;
}

void write_annotations_csv(const AnnotationCorpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write annotation file: " + path);
  out << "image_id,label,confidence,verified\n";
  for (const auto& img : corpus.images) {
    for (const auto& a : img.labels) {
      const char* v = a.verified == Verified::Correct     ? "1"
                      : a.verified == Verified::Incorrect ? "0"
                                                          : "";
      out << csv::join({img.image_id, a.label, format_confidence(a.confidence), v})
          << '\n';
    }
  }
}

Vocabulary build_vocabulary(const AnnotationCorpus& corpus, std::int64_t min_count) {
  if (min_count < 1) throw InvalidArgument("min_count must be >= 1");
  std::unordered_map<std::string, std::int64_t> freq;
  for (const auto& img : corpus.images)
    for (const auto& a : img.labels) ++freq[a.label];  // labels unique per image

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [name, n] : freq)
    if (n >= min_count) kept.emplace_back(name, n);
  if (kept.empty())
    throw Error("empty vocabulary: no label appears in >= " +
                std::to_string(min_count) + " images");
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> labels;
  std::vector<std::int64_t> counts;
  labels.reserve(kept.size());
  counts.reserve(kept.size());
  for (auto& [name, n] : kept) {
    labels.push_back(std::move(name));
    counts.push_back(n);
  }
  return Vocabulary(std::move(labels), std::move(counts),
                    static_cast<std::int64_t>(corpus.image_count()));
}

AnnotationCorpus bootstrap_sample(const AnnotationCorpus& corpus, double fraction,
                                  std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw InvalidArgument("bootstrap fraction must be in (0,1]");
  const std::size_t n = corpus.image_count();
  const auto k = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(n)));
  Rng rng(seed);
  AnnotationCorpus sample;
  sample.images.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    sample.images.push_back(corpus.images[rng.next_index(n)]);
  return sample;
}

}  // namespace iota
