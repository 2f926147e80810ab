use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use gmrule_service::{router, SessionStore, SessionView, Status};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> (SessionStore, axum::Router) {
    let store = SessionStore::new(Duration::from_secs(600));
    (store.clone(), router(store))
}

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

#[tokio::test]
async fn create_reports_analysis() {
    let (_, app) = app();
    let (status, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [3, 1, 2], "human_first": true}))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["piles"], json!([1, 2, 3]));
    assert_eq!(body["status"], "Active");
    assert_eq!(body["remoteness"], 3);
    assert_eq!(body["outcome"], "N");
    assert_eq!(body["hint"]["keep_index"], 2);
    assert_eq!(body["history"], json!([]));
}

#[tokio::test]
async fn engine_first_opens_after_its_move() {
    let (_, app) = app();
    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [1, 2, 3], "human_first": false}))).await;
    assert_eq!(body["piles"], json!([0, 2, 2]));
    assert_eq!(body["history"][0]["by"], "engine");
    assert_eq!(body["human_to_move"], true);
}

#[tokio::test]
async fn full_game_following_hints() {
    let (_, app) = app();
    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [1, 2, 3]}))).await;
    let id = body["id"].as_str().unwrap().to_string();
    let r = body["remoteness"].as_u64().unwrap();
    let mut last = body;
    while last["status"] == "Active" {
        let (status, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
        assert_eq!(status, StatusCode::OK);
        let (status, next) = call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": hint["keep_index"]}))).await;
        assert_eq!(status, StatusCode::OK);
        last = next;
    }
    assert_eq!(last["status"], "HumanWon");
    assert_eq!(last["history"].as_array().unwrap().len() as u64, r);
    let (_, again) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(again, last);
    let (status, _) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 1}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn history_replays_consistently() {
    let (_, app) = app();
    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [4, 5, 6, 7]}))).await;
    let id = body["id"].as_str().unwrap().to_string();
    call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 1}))).await;
    let (_, view) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let view: SessionView = serde_json::from_value(view).unwrap();
    let mut piles = vec![4u64, 5, 6, 7];
    for entry in &view.history {
        let k = entry.keep_index - 1;
        for (i, p) in piles.iter_mut().enumerate() {
            if i != k {
                *p -= 1;
            }
        }
        piles.sort();
        assert_eq!(piles, entry.piles);
    }
    assert_eq!(piles, view.piles);
}

#[tokio::test]
async fn error_statuses() {
    let (_, app) = app();
    let missing = "00000000-0000-4000-8000-000000000000";
    assert_eq!(call(&app, "GET", &format!("/sessions/{missing}"), None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", "/sessions/not-a-uuid", None).await.0, StatusCode::NOT_FOUND);
    assert_eq!(call(&app, "GET", &format!("/sessions/{missing}/hint"), None).await.0, StatusCode::NOT_FOUND);

    assert_eq!(call(&app, "POST", "/sessions", Some(json!({"piles": [1]}))).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call(&app, "POST", "/sessions", Some(json!({"piles": [-1, 2]}))).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(call(&app, "POST", "/sessions", Some(json!({"stones": 3}))).await.0, StatusCode::BAD_REQUEST);
    let req = Request::builder()
        .method("POST")
        .uri("/sessions")
        .header("content-type", "application/json")
        .body(Body::from("{not json"))
        .unwrap();
    assert_eq!(app.clone().oneshot(req).await.unwrap().status(), StatusCode::BAD_REQUEST);

    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [0, 2, 3]}))).await;
    let id = body["id"].as_str().unwrap().to_string();
    let (status, err) = call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 2}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(err["error"].as_str().unwrap().contains("below zero"));
    assert_eq!(call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 0}))).await.0, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep": 1}))).await.0, StatusCode::BAD_REQUEST);

    let (_, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [0, 0, 5]}))).await;
    assert_eq!(body["status"], "HumanLost");
    assert!(body["hint"].is_null());
    let id = body["id"].as_str().unwrap().to_string();
    assert_eq!(call(&app, "GET", &format!("/sessions/{id}/hint"), None).await.0, StatusCode::CONFLICT);
}

#[tokio::test]
async fn concurrent_move_on_a_held_session_conflicts() {
    let (store, app) = app();
    let view = store.create(&[5, 6, 7], true).unwrap();
    let id = view.id;
    let (entered_tx, entered_rx) = std::sync::mpsc::channel();
    let (release_tx, release_rx) = std::sync::mpsc::channel::<()>();
    let holder = {
        let store = store.clone();
        std::thread::spawn(move || {
            store
                .with_session(id, |_| {
                    entered_tx.send(()).unwrap();
                    release_rx.recv().unwrap();
                    Ok(())
                })
                .unwrap();
        })
    };
    entered_rx.recv().unwrap();
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 1}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    release_tx.send(()).unwrap();
    holder.join().unwrap();
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 1}))).await;
    assert_eq!(status, StatusCode::OK);
}

#[tokio::test]
async fn sessions_are_independent_under_load() {
    let (store, app) = app();
    let app = Arc::new(app);
    let mut tasks = Vec::new();
    for i in 0..32u64 {
        let app = app.clone();
        tasks.push(tokio::spawn(async move {
            let (_, body) = call(&app, "POST", "/sessions", Some(json!({"piles": [i % 5 + 1, 6, 9]}))).await;
            let id = body["id"].as_str().unwrap().to_string();
            let (status, _) = call(&app, "POST", &format!("/sessions/{id}/move"), Some(json!({"keep_index": 3}))).await;
            status
        }));
    }
    for t in tasks {
        assert_eq!(t.await.unwrap(), StatusCode::OK);
    }
    assert_eq!(store.len(), 32);
    assert_eq!(store.get(store.create(&[1, 1], true).unwrap().id).unwrap().status, Status::Active);
}
