class jjava_lang_Boolean:public jjava_lang_Object{
    public:inline static jjava_lang_Boolean TRUE(JNIEnv*);
    public:inline static jjava_lang_Boolean FALSE(JNIEnv*);
    public:inline static jjava_lang_Class TYPE(JNIEnv*);
    public:inline jboolean value(JNIEnv*);
    public:inline void value(JNIEnv*, jboolean);
    public:inline static jlong serialVersionUID(JNIEnv*);
    public:inline static jjava_lang_Boolean Boolean(JNIEnv*,
        jboolean);
    public:inline static jjava_lang_Boolean Boolean(JNIEnv*,
        jjava_lang_String);
    public:inline jboolean booleanValue(JNIEnv*);
    public:inline static jjava_lang_Boolean valueOf(JNIEnv*,
        jjava_lang_String);
    public:inline jjava_lang_String toString(JNIEnv*);
    public:inline jint hashCode(JNIEnv*);
    public:inline jboolean equals(JNIEnv*, jjava_lang_Object);
    public:inline static jboolean getBoolean(JNIEnv*,
        jjava_lang_String);
    public:inline static jboolean toBoolean(JNIEnv*,
        jjava_lang_String);
};
