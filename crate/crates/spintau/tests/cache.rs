use spintau::cache::{Cache, CacheStatus, SCHEMA_VERSION};
use std::fs;

fn compute(s: &str) -> impl FnOnce() -> Result<String, ()> + '_ {
    move || Ok(s.to_string())
}

#[test]
fn miss_then_hit() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = Cache::open(Some(dir.path().to_path_buf()));
    assert_eq!(c.get_or_compute("req", compute("a")).unwrap(), ("a".into(), CacheStatus::Miss));
    // A hit never calls compute.
    let hit = c.get_or_compute("req", || -> Result<String, ()> { panic!("recomputed") }).unwrap();
    assert_eq!(hit, ("a".into(), CacheStatus::Hit));
    assert!(c.warnings.is_empty());
}

#[test]
fn schema_bump_misses() {
    let dir = tempfile::tempdir().unwrap();
    let p = Some(dir.path().to_path_buf());
    let mut old = Cache::with_version(p.clone(), SCHEMA_VERSION);
    old.get_or_compute("req", compute("old")).unwrap();
    let mut new = Cache::with_version(p, SCHEMA_VERSION + 1);
    assert_ne!(old.key("req"), new.key("req"));
    assert_eq!(new.get_or_compute("req", compute("new")).unwrap(), ("new".into(), CacheStatus::Miss));
}

#[test]
fn corrupt_entry_is_repaired() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = Cache::open(Some(dir.path().to_path_buf()));
    c.get_or_compute("req", compute("good")).unwrap();
    let payload = dir.path().join(format!("{}.json", c.key("req")));
    fs::write(&payload, "tampered").unwrap();
    assert_eq!(c.get_or_compute("req", compute("good")).unwrap(), ("good".into(), CacheStatus::Repaired));
    assert_eq!(fs::read_to_string(&payload).unwrap(), "good");
    assert_eq!(c.get_or_compute("req", compute("x")).unwrap().1, CacheStatus::Hit);

    fs::remove_file(dir.path().join(format!("{}.sha256", c.key("req")))).unwrap();
    assert_eq!(c.get_or_compute("req", compute("good")).unwrap().1, CacheStatus::Repaired);
}

#[test]
fn unwritable_directory_warns() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let mut c = Cache::open(Some(blocker.join("cache")));
    assert_eq!(c.get_or_compute("req", compute("v")).unwrap(), ("v".into(), CacheStatus::Miss));
    assert_eq!(c.warnings.len(), 1);
    assert!(c.warnings[0].contains("not writable"));
}

#[test]
fn disabled_always_computes() {
    let mut c = Cache::disabled();
    assert_eq!(c.get_or_compute("req", compute("v")).unwrap().1, CacheStatus::Disabled);
    assert!(c.dir().is_none());
}
