#include "gp/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gp/errors.hpp"

namespace gp::csv {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

// strip a trailing CR so CRLF files still parse
std::string_view chomp(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

}  // namespace

Recording read_recording(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot open recording file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw EmptyFile("empty recording file: " + path.string());
    if (chomp(line) != kRecordingHeader) {
        throw MalformedRow(0, "bad recording header in " + path.string() + ": \"" + line + "\"");
    }

    Recording rec;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const std::string_view body = chomp(line);
        if (body.empty()) continue;
        ++row;
        const auto fields = split_fields(body);
        if (fields.size() != 7) {
            throw MalformedRow(row, "row " + std::to_string(row) + " of " + path.string() +
                                        ": expected 7 columns, got " +
                                        std::to_string(fields.size()));
        }
        ImuSample s;
        double vals[7];
        for (int i = 0; i < 7; ++i) {
            if (!parse_double(fields[i], vals[i]) || !std::isfinite(vals[i])) {
                throw MalformedRow(row, "row " + std::to_string(row) + " of " + path.string() +
                                            ": non-numeric field \"" + std::string(fields[i]) +
                                            "\"");
            }
        }
        s.t = vals[0];
        s.acc = {vals[1], vals[2], vals[3]};
        s.ang = {vals[4], vals[5], vals[6]};
        if (!rec.samples.empty() && s.t <= rec.samples.back().t) {
            throw NonMonotoneTime(row, "row " + std::to_string(row) + " of " + path.string() +
                                           ": timestamp " + format_double(s.t) +
                                           " does not increase past " +
                                           format_double(rec.samples.back().t));
        }
        rec.samples.push_back(s);
    }
    if (rec.samples.empty()) throw EmptyFile("no samples in " + path.string());
    return rec;
}

void write_recording(const Recording& rec, const std::filesystem::path& path) {
    if (rec.samples.size() < 2 || rec.duration() <= 0.0) {
        throw IoFailure("refusing to write invalid recording (" +
                        std::to_string(rec.samples.size()) + " samples) to " + path.string());
    }
    std::ostringstream out;
    out << kRecordingHeader << '\n';
    for (const ImuSample& s : rec.samples) {
        out << format_double(s.t) << ',' << format_double(s.acc[0]) << ','
            << format_double(s.acc[1]) << ',' << format_double(s.acc[2]) << ','
            << format_double(s.ang[0]) << ',' << format_double(s.ang[1]) << ','
            << format_double(s.ang[2]) << '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << out.str()) || !f.flush()) {
        throw IoFailure("failed to write recording to " + path.string());
    }
}

std::vector<CommandRecord> read_command_log(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot open command log: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw EmptyFile("empty command log: " + path.string());
    if (chomp(line) != kCommandHeader) {
        throw MalformedRow(0, "bad command-log header in " + path.string());
    }

    std::vector<CommandRecord> log;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const std::string_view body = chomp(line);
        if (body.empty()) continue;
        ++row;
        const auto fields = split_fields(body);
        if (fields.size() != 6) {
            throw MalformedRow(row, "command-log row " + std::to_string(row) + " of " +
                                        path.string() + ": expected 6 columns");
        }
        CommandRecord r;
        double onset, duration, fraction, cycle;
        const auto dir = direction_from_name(std::string(fields[2]));
        const auto bin = phase_bin_from_name(std::string(fields[3]));
        if (!parse_double(fields[0], onset) || !parse_double(fields[1], duration) || !dir ||
            !bin || !parse_double(fields[4], cycle) || !parse_double(fields[5], fraction)) {
            throw MalformedRow(row, "command-log row " + std::to_string(row) + " of " +
                                        path.string() + ": unparseable field");
        }
        r.command = {*dir, onset, duration};
        r.bin = *bin;
        r.cycle_index = static_cast<std::int64_t>(cycle);
        r.fraction_at_onset = fraction;
        log.push_back(r);
    }
    return log;
}

void write_command_log(const std::vector<CommandRecord>& log,
                       const std::filesystem::path& path) {
    std::ostringstream out;
    out << kCommandHeader << '\n';
    for (const CommandRecord& r : log) {
        out << format_double(r.command.onset_t) << ',' << format_double(r.command.duration)
            << ',' << direction_name(r.command.direction) << ',' << phase_bin_name(r.bin) << ','
            << r.cycle_index << ',' << format_double(r.fraction_at_onset) << '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << out.str()) || !f.flush()) {
        throw IoFailure("failed to write command log to " + path.string());
    }
}

}  // namespace gp::csv
