package example.android;

import android.app.Activity;
import android.os.Bundle;

public class Lifecycle extends Activity {
    protected void onCreate(Bundle savedInstanceState) {}
    protected void onStart() {}
    protected void onRestart() {}
    protected void onResume() {}
    protected void onPause() {}
    protected void onStop() {}
    protected void onDestroy() {}
}
