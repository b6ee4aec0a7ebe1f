//! Particle track ingestion: CSV parsing, validation and per-axis splitting.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Axis labels used for headers and reports.
pub const AXIS_NAMES: [&str; 3] = ["x", "y", "z"];

/// One particle's samples, ordered by time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackSeries {
    track_id: String,
    times: Vec<f64>,
    coords: Vec<Vec<f64>>,
}

impl TrackSeries {
    /// Validates and wraps already-ordered samples.
    pub fn new(track_id: impl Into<String>, times: Vec<f64>, coords: Vec<Vec<f64>>) -> Result<Self> {
        if times.len() != coords.len() {
            return Err(Error::InvalidConfig(format!(
                "{} times but {} coordinates",
                times.len(),
                coords.len()
            )));
        }
        if times.len() < 2 {
            return Err(Error::TooShort(times.len()));
        }
        let dim = coords[0].len();
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidConfig(format!("dimension {dim} not in 1..=3")));
        }
        if let Some((index, c)) = coords.iter().enumerate().find(|(_, c)| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                index,
                expected: dim,
                found: c.len(),
            });
        }
        check_increasing(&times)?;
        Ok(Self {
            track_id: track_id.into(),
            times,
            coords,
        })
    }

    /// Reassembles a track from per-axis series sharing the same times.
    pub fn from_axes(track_id: impl Into<String>, axes: &[AxisSeries]) -> Result<Self> {
        let first = axes
            .first()
            .ok_or_else(|| Error::InvalidConfig("no axes given".into()))?;
        if axes.iter().any(|a| a.times != first.times) {
            return Err(Error::InvalidConfig("axes do not share sample times".into()));
        }
        let coords = (0..first.len())
            .map(|k| axes.iter().map(|a| a.values[k]).collect())
            .collect();
        Self::new(track_id, first.times.clone(), coords)
    }

    pub fn track_id(&self) -> &str {
        &self.track_id
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords[0].len()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.times[self.times.len() - 1] - self.times[0]
    }

    /// Splits the track into one 1D series per spatial direction.
    pub fn split_axes(&self) -> Vec<AxisSeries> {
        (0..self.dim())
            .map(|axis| AxisSeries {
                times: self.times.clone(),
                values: self.coords.iter().map(|c| c[axis]).collect(),
            })
            .collect()
    }
}

/// Free-function form of [`TrackSeries::split_axes`].
pub fn split_axes(track: &TrackSeries) -> Vec<AxisSeries> {
    track.split_axes()
}

/// Samples of a single spatial direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisSeries {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl AxisSeries {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidConfig(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        check_increasing(&times)?;
        Ok(Self { times, values })
    }

    /// Samples `f` at the given times.
    pub fn sample(times: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = times.iter().map(|&t| f(t)).collect();
        Self::new(times, values)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn check_increasing(times: &[f64]) -> Result<()> {
    if let Some(i) = times.iter().position(|t| !t.is_finite()) {
        return Err(Error::NonMonotoneTimes { index: i });
    }
    match times.windows(2).position(|w| w[1] <= w[0]) {
        Some(i) => Err(Error::NonMonotoneTimes { index: i + 1 }),
        None => Ok(()),
    }
}

/// Input file layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrackFormat {
    /// Header `track,t,x[,y[,z]]`.
    #[default]
    GenericCsv,
    /// TrackMate spot table: TRACK_ID, POSITION_T, POSITION_X/Y/Z, other columns ignored.
    TrackmateCsv,
}

/// All tracks read from one file, in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackSet {
    pub tracks: IndexMap<String, TrackSeries>,
    pub source: PathBuf,
    /// Unit annotations found in the file (`time`, `length`), if any.
    pub units: BTreeMap<String, String>,
    dim: usize,
}

impl TrackSet {
    /// Collects in-memory tracks; all must share one dimension and have
    /// distinct ids.
    pub fn from_tracks(source: impl Into<PathBuf>, tracks: Vec<TrackSeries>) -> Result<Self> {
        let dim = tracks.first().map_or(0, TrackSeries::dim);
        let mut map = IndexMap::with_capacity(tracks.len());
        for (index, t) in tracks.into_iter().enumerate() {
            if t.dim() != dim {
                return Err(Error::DimensionMismatch {
                    index,
                    expected: dim,
                    found: t.dim(),
                });
            }
            let id = t.track_id().to_string();
            if map.insert(id.clone(), t).is_some() {
                return Err(Error::InvalidConfig(format!("duplicate track id `{id}`")));
            }
        }
        Ok(Self {
            tracks: map,
            source: source.into(),
            units: BTreeMap::new(),
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tracks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tracks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TrackSeries> {
        self.tracks.values()
    }
}

struct Columns {
    track: usize,
    time: usize,
    axes: Vec<usize>,
}

impl Columns {
    fn locate(header: &csv::StringRecord, format: TrackFormat) -> Result<Self> {
        let names: [&str; 5] = match format {
            TrackFormat::GenericCsv => ["track", "t", "x", "y", "z"],
            TrackFormat::TrackmateCsv => {
                ["TRACK_ID", "POSITION_T", "POSITION_X", "POSITION_Y", "POSITION_Z"]
            }
        };
        let find = |name: &str| {
            header.iter().position(|h| match format {
                TrackFormat::GenericCsv => h.trim().eq_ignore_ascii_case(name),
                TrackFormat::TrackmateCsv => h.trim() == name,
            })
        };
        let required = |name: &str| find(name).ok_or_else(|| Error::MissingColumn(name.to_string()));
        let track = required(names[0])?;
        let time = required(names[1])?;
        let mut axes = vec![required(names[2])?];
        if let Some(y) = find(names[3]) {
            axes.push(y);
            if let Some(z) = find(names[4]) {
                axes.push(z);
            }
        } else if find(names[4]).is_some() {
            return Err(Error::MissingColumn(names[3].to_string()));
        }
        Ok(Self { track, time, axes })
    }
}

/// Reads every track from a CSV file.
pub fn parse_tracks(path: impl AsRef<Path>, format: TrackFormat) -> Result<TrackSet> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_tracks_from_reader(file, format, path)
}

/// Same as [`parse_tracks`] for an arbitrary byte source.
pub fn parse_tracks_from_reader<R: Read>(
    reader: R,
    format: TrackFormat,
    source: impl Into<PathBuf>,
) -> Result<TrackSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(format == TrackFormat::TrackmateCsv)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    let cols = Columns::locate(&header, format)?;
    let dim = cols.axes.len();

    let mut units = BTreeMap::new();
    let mut rows: IndexMap<String, Vec<(f64, Vec<f64>, u64)>> = IndexMap::new();
    let mut seen_data = false;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");
        if format == TrackFormat::TrackmateCsv {
            // TrackMate repeats the header as long names, short names and
            // units before the first spot; skip them, keeping the units.
            if !seen_data && field(cols.time).parse::<f64>().is_err() {
                if let Some(u) = unit_annotation(field(cols.time)) {
                    units.insert("time".to_string(), u);
                }
                if let Some(u) = unit_annotation(field(cols.axes[0])) {
                    units.insert("length".to_string(), u);
                }
                continue;
            }
            let id = field(cols.track);
            if id.is_empty() || id.eq_ignore_ascii_case("none") {
                log::debug!("line {line}: spot not assigned to a track, skipped");
                continue;
            }
        }
        seen_data = true;

        let track = field(cols.track).to_string();
        if track.is_empty() {
            return Err(Error::MalformedRow {
                line,
                reason: "empty track id".into(),
            });
        }
        let number = |i: usize, what: &str| -> Result<f64> {
            let raw = field(i);
            match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::MalformedRow {
                    line,
                    reason: format!("{what} `{raw}` is not a finite number"),
                }),
            }
        };
        let t = number(cols.time, "time")?;
        let coord = cols
            .axes
            .iter()
            .zip(AXIS_NAMES)
            .map(|(&i, name)| number(i, name))
            .collect::<Result<Vec<_>>>()?;
        rows.entry(track).or_default().push((t, coord, line));
    }

    let mut tracks = IndexMap::with_capacity(rows.len());
    for (id, mut samples) in rows {
        samples.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        if let Some(w) = samples.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateTimestamp {
                track: id,
                time: w[0].0,
            });
        }
        if samples.len() < 2 {
            log::warn!("track `{id}` has {} sample(s); dropped", samples.len());
            continue;
        }
        let (times, coords): (Vec<f64>, Vec<Vec<f64>>) =
            samples.into_iter().map(|(t, c, _)| (t, c)).unzip();
        let series = TrackSeries::new(id.clone(), times, coords)?;
        tracks.insert(id, series);
    }

    Ok(TrackSet {
        tracks,
        source: source.into(),
        units,
        dim,
    })
}

fn unit_annotation(field: &str) -> Option<String> {
    let inner = field.strip_prefix('(')?.strip_suffix(')')?;
    (!inner.is_empty()).then(|| inner.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, format: TrackFormat) -> Result<TrackSet> {
        parse_tracks_from_reader(text.as_bytes(), format, "mem.csv")
    }

    #[test]
    fn three_row_generic_track() {
        let set = parse("track,t,x,y\n1,0,0,0\n1,1,1,0.5\n1,2,2,1\n", TrackFormat::GenericCsv).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.dim(), 2);
        let tr = &set.tracks["1"];
        assert_eq!(tr.len(), 3);
        assert_eq!(tr.coords()[1], vec![1.0, 0.5]);
    }

    #[test]
    fn duplicate_time_names_track() {
        let err = parse("track,t,x\na,0,1\na,1,2\na,1,3\n", TrackFormat::GenericCsv).unwrap_err();
        match err {
            Error::DuplicateTimestamp { track, time } => {
                assert_eq!(track, "a");
                assert_eq!(time, 1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rows_are_sorted_per_track() {
        let set = parse("track,t,x\nb,2,5\na,1,1\nb,0,3\na,0,0\nb,1,4\n", TrackFormat::GenericCsv).unwrap();
        assert_eq!(set.tracks.keys().collect::<Vec<_>>(), ["b", "a"]);
        assert_eq!(set.tracks["b"].times(), &[0.0, 1.0, 2.0]);
        assert_eq!(set.tracks["b"].coords(), &[vec![3.0], vec![4.0], vec![5.0]]);
    }

    #[test]
    fn short_tracks_are_dropped() {
        let set = parse("track,t,x\na,0,0\nb,0,1\nb,1,2\n", TrackFormat::GenericCsv).unwrap();
        assert_eq!(set.tracks.keys().collect::<Vec<_>>(), ["b"]);
    }

    #[test]
    fn malformed_row_reports_line() {
        let err = parse("track,t,x\na,0,0\na,1,nan\n", TrackFormat::GenericCsv).unwrap_err();
        assert!(matches!(err, Error::MalformedRow { line: 3, .. }), "{err:?}");
        let err = parse("track,t,x\na,0,0\na,zz,1\n", TrackFormat::GenericCsv).unwrap_err();
        assert!(matches!(err, Error::MalformedRow { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn missing_column() {
        let err = parse("track,time,x\n", TrackFormat::GenericCsv).unwrap_err();
        assert!(matches!(err, Error::MissingColumn(ref c) if c == "t"));
    }

    #[test]
    fn trackmate_matches_generic() {
        let tm = "LABEL,ID,TRACK_ID,QUALITY,POSITION_X,POSITION_Y,POSITION_Z,POSITION_T,FRAME\n\
                  Label,Spot ID,Track ID,Quality,X,Y,Z,T,Frame\n\
                  Label,Spot ID,Track ID,Quality,X,Y,Z,T,Frame\n\
                  ,,,(quality),(micron),(micron),(micron),(sec),\n\
                  ID1,1,0,10.0,1.5,2.5,0.0,0.144,1\n\
                  ID0,0,0,10.0,1.0,2.0,0.0,0.0,0\n\
                  ID5,5,None,3.0,9.0,9.0,0.0,0.0,0\n\
                  ID2,2,0,10.0,2.0,3.5,0.0,0.288,2\n";
        let tm = tm.replace(",POSITION_Z", ",IGNORED_Z");
        let a = parse(&tm, TrackFormat::TrackmateCsv).unwrap();
        let b = parse("track,t,x,y\n0,0,1,2\n0,0.144,1.5,2.5\n0,0.288,2,3.5\n", TrackFormat::GenericCsv).unwrap();
        assert_eq!(a.tracks, b.tracks);
        assert_eq!(a.units.get("time").map(String::as_str), Some("sec"));
        assert_eq!(a.units.get("length").map(String::as_str), Some("micron"));
    }

    #[test]
    fn split_2d_track() {
        let tr = TrackSeries::new("p", vec![0.0, 1.0], vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let axes = split_axes(&tr);
        assert_eq!(axes[0].values(), &[1.0, 3.0]);
        assert_eq!(axes[1].values(), &[2.0, 4.0]);
        assert_eq!(axes[0].times(), axes[1].times());
        assert_eq!(TrackSeries::from_axes("p", &axes).unwrap(), tr);
    }

    #[test]
    fn split_1d_track_is_identity() {
        let tr = TrackSeries::new("p", vec![0.0, 1.0, 3.0], vec![vec![5.0], vec![6.0], vec![2.0]]).unwrap();
        let axes = tr.split_axes();
        assert_eq!(axes.len(), 1);
        assert_eq!(axes[0].values(), &[5.0, 6.0, 2.0]);
    }

    #[test]
    fn series_rejects_bad_times() {
        assert!(matches!(
            AxisSeries::new(vec![0.0, 1.0, 1.0], vec![0.0; 3]),
            Err(Error::NonMonotoneTimes { index: 2 })
        ));
        assert!(matches!(
            TrackSeries::new("a", vec![0.0], vec![vec![0.0]]),
            Err(Error::TooShort(1))
        ));
    }
}
