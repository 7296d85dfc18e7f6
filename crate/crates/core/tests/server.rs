use std::time::Duration;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use qmut::interface::server::{router, AppState};
use qmut::{apply_sequence, frame, MutationSequence, Quiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(Duration::from_secs(600)))
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    let v = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, v)
}

async fn mutate(app: &Router, id: &str, v: &str) -> (StatusCode, Value) {
    call(app, Method::POST, &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": v }))).await
}

fn status_of(state: &Value, v: &str) -> String {
    state["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .find(|x| x["id"] == v)
        .unwrap()["status"]
        .as_str()
        .unwrap()
        .to_owned()
}

#[tokio::test]
async fn single_vertex_turns_red() {
    let app = app();
    let (code, created) = call(&app, Method::POST, "/sessions", Some(json!({"mutable": ["1"]}))).await;
    assert_eq!(code, StatusCode::CREATED);
    let id = created["id"].as_str().unwrap().to_owned();
    assert_eq!(status_of(&created["state"], "1"), "green");
    assert_eq!(status_of(&created["state"], "1'"), "frozen");

    let (code, s) = mutate(&app, &id, "1").await;
    assert_eq!(code, StatusCode::OK);
    assert_eq!(status_of(&s, "1"), "red");
    assert_eq!(s["all_red"], true);
    assert_eq!(s["history"], json!(["1"]));

    let (code, s) = call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(code, StatusCode::OK);
    assert_eq!(s["all_red"], false);
    assert_eq!(s["history"], json!([]));

    let (code, _) = call(&app, Method::DELETE, &format!("/sessions/{id}"), None).await;
    assert_eq!(code, StatusCode::NO_CONTENT);
    let (code, _) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(code, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn family_session_flow() {
    let app = app();
    let (code, created) = call(
        &app,
        Method::POST,
        "/sessions/from-family",
        Some(json!({"name": "path_bi_center_out", "level": 2})),
    )
    .await;
    assert_eq!(code, StatusCode::CREATED);
    let id = created["id"].as_str().unwrap().to_owned();
    let mut last = Value::Null;
    for v in ["0", "-1", "1"] {
        let (code, s) = mutate(&app, &id, v).await;
        assert_eq!(code, StatusCode::OK);
        last = s;
    }
    assert_eq!(last["all_red"], true);
    assert_eq!(last["history"], json!(["0", "-1", "1"]));

    // frozen click: error, state unchanged
    let (code, err) = mutate(&app, &id, "0'").await;
    assert_eq!(code, StatusCode::CONFLICT);
    assert!(err["error"].is_string());
    let (_, now) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(now, last);
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (code, _) = call(&app, Method::POST, "/sessions", Some(json!({"mutable": 3}))).await;
    assert_eq!(code, StatusCode::BAD_REQUEST);
    let (code, _) = call(
        &app,
        Method::POST,
        "/sessions",
        Some(json!({"mutable": ["1"], "arrows": [{"from": "1", "to": "1"}]})),
    )
    .await;
    assert_eq!(code, StatusCode::UNPROCESSABLE_ENTITY);
    let (code, _) = call(
        &app,
        Method::POST,
        "/sessions/from-family",
        Some(json!({"name": "spiral", "level": 1})),
    )
    .await;
    assert_eq!(code, StatusCode::UNPROCESSABLE_ENTITY);
    let (code, _) = call(&app, Method::GET, "/sessions/nope", None).await;
    assert_eq!(code, StatusCode::NOT_FOUND);

    let (_, created) = call(&app, Method::POST, "/sessions", Some(json!({"mutable": ["1"]}))).await;
    let id = created["id"].as_str().unwrap();
    let (code, _) = mutate(&app, id, "7").await;
    assert_eq!(code, StatusCode::CONFLICT);
    let (code, _) = call(&app, Method::POST, &format!("/sessions/{id}/mutate"), Some(json!({}))).await;
    assert_eq!(code, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn families_are_listed() {
    let (code, v) = call(&app(), Method::GET, "/families", None).await;
    assert_eq!(code, StatusCode::OK);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"nested_triangles"));
    assert!(names.contains(&"star"));
}

#[tokio::test]
async fn state_always_equals_replay_of_history() {
    let app = app();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let body = json!({
        "mutable": ["1", "2", "3", "4"],
        "arrows": [
            {"from": "1", "to": "2"}, {"from": "2", "to": "3", "weight": 2},
            {"from": "4", "to": "3"}, {"from": "1", "to": "4"}
        ]
    });
    let base: Quiver = qmut::interface::json::parse_quiver(&body.to_string()).unwrap();
    let (_, created) = call(&app, Method::POST, "/sessions", Some(body)).await;
    let id = created["id"].as_str().unwrap().to_owned();
    for _ in 0..60 {
        let (code, s) = if rng.random_bool(0.3) {
            call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await
        } else {
            let v = rng.random_range(1..=4).to_string();
            mutate(&app, &id, &v).await
        };
        assert_eq!(code, StatusCode::OK);
        let history: MutationSequence = serde_json::from_value(s["history"].clone()).unwrap();
        let replay = apply_sequence(&frame(&base).unwrap(), &history).unwrap();
        let expected = qmut::interface::json::QuiverDoc::from_quiver(replay.quiver()).arrows;
        assert_eq!(s["arrows"], serde_json::to_value(expected).unwrap());
        assert_eq!(s["all_red"], replay.all_red());
    }
}

#[tokio::test]
async fn http_and_cli_agree() {
    let app = app();
    let text = r#"{"mutable":["1","2","3"],"arrows":[{"from":"1","to":"2","weight":2},{"from":"2","to":"3"}]}"#;
    let (_, created) = call(&app, Method::POST, "/sessions", Some(serde_json::from_str(text).unwrap())).await;
    let id = created["id"].as_str().unwrap().to_owned();
    let mut state = Value::Null;
    for v in ["2", "1", "3"] {
        state = mutate(&app, &id, v).await.1;
    }

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let framed = frame(&qmut::interface::json::parse_quiver(text).unwrap()).unwrap();
    std::fs::write(&path, qmut::interface::json::quiver_to_json(framed.quiver())).unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_qmut"))
        .args(["mutate", "-q", path.to_str().unwrap(), "-s", "2,1,3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let cli: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cli["arrows"], state["arrows"]);
}

#[tokio::test]
async fn idle_sessions_expire() {
    let app = router(AppState::new(Duration::from_millis(20)));
    let (_, created) = call(&app, Method::POST, "/sessions", Some(json!({"mutable": ["1"]}))).await;
    let id = created["id"].as_str().unwrap().to_owned();
    std::thread::sleep(Duration::from_millis(60));
    let (code, _) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(code, StatusCode::NOT_FOUND);
}
